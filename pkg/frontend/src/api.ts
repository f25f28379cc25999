// Typed client for the /api/v1 session endpoints.  The multipart body for
// uploads is assembled by hand so the client runs identically under
// browsers and under node test environments.

import type {
	ApplySummary,
	ChainSummary,
	CriterionDoc,
	EventsPage,
	GeneralStats,
	Metric,
	ModelDoc,
	ObjectsPage,
	ReportDoc,
	StatsDoc,
} from "./types.js";

export class ApiRequestError extends Error {
	constructor(
		public readonly status: number,
		public readonly code: string,
		message: string,
	) {
		super(message);
	}
}

async function parseResponse<T>(response: Response): Promise<T> {
	const text = await response.text();
	let body: unknown = null;
	try {
		body = text ? JSON.parse(text) : null;
	} catch {
		// non-JSON error bodies fall through to the generic error below
	}
	if (!response.ok) {
		const doc = (body ?? {}) as { code?: string; message?: string };
		throw new ApiRequestError(
			response.status,
			doc.code ?? "error",
			doc.message ?? `request failed with status ${response.status}`,
		);
	}
	return body as T;
}

function multipartBody(
	field: string,
	filename: string,
	payload: Uint8Array,
): { contentType: string; body: Uint8Array } {
	let boundary = `----ocpm-${Date.now().toString(16)}`;
	const text = new TextDecoder("latin1").decode(payload);
	while (text.includes(boundary)) {
		boundary += "x";
	}
	const head =
		`--${boundary}\r\n` +
		`Content-Disposition: form-data; name="${field}"; filename="${filename}"\r\n` +
		`Content-Type: application/octet-stream\r\n\r\n`;
	const tail = `\r\n--${boundary}--\r\n`;
	const encoder = new TextEncoder();
	const headBytes = encoder.encode(head);
	const tailBytes = encoder.encode(tail);
	const body = new Uint8Array(headBytes.length + payload.length + tailBytes.length);
	body.set(headBytes, 0);
	body.set(payload, headBytes.length);
	body.set(tailBytes, headBytes.length + payload.length);
	return { contentType: `multipart/form-data; boundary=${boundary}`, body };
}

export class ApiClient {
	constructor(private readonly base: string = "") {}

	private url(path: string): string {
		return `${this.base}/api/v1${path}`;
	}

	async createSession(payload: Uint8Array, filename: string): Promise<string> {
		const { contentType, body } = multipartBody("file", filename, payload);
		const response = await fetch(this.url("/sessions"), {
			method: "POST",
			headers: { "Content-Type": contentType },
			// typed-array generics in newer lib defs are stricter than BodyInit
			body: body as unknown as BodyInit,
		});
		const doc = await parseResponse<{ session_id: string }>(response);
		return doc.session_id;
	}

	async general(sid: string): Promise<GeneralStats> {
		return parseResponse(await fetch(this.url(`/sessions/${sid}/general`)));
	}

	async stats(sid: string): Promise<StatsDoc> {
		return parseResponse(await fetch(this.url(`/sessions/${sid}/stats`)));
	}

	async model(
		sid: string,
		metric: Metric,
		minNode: number,
		minEdge: number,
	): Promise<ModelDoc> {
		const query = `metric=${encodeURIComponent(metric)}&min_node=${minNode}&min_edge=${minEdge}`;
		return parseResponse(await fetch(this.url(`/sessions/${sid}/model?${query}`)));
	}

	async chain(sid: string): Promise<ChainSummary> {
		return parseResponse(await fetch(this.url(`/sessions/${sid}/filters`)));
	}

	async pushFilter(sid: string, criterion: CriterionDoc): Promise<ChainSummary> {
		const response = await fetch(this.url(`/sessions/${sid}/filters`), {
			method: "POST",
			headers: { "Content-Type": "application/json" },
			body: JSON.stringify(criterion),
		});
		return parseResponse(response);
	}

	async popFilter(sid: string, index: number): Promise<ChainSummary> {
		const response = await fetch(this.url(`/sessions/${sid}/filters/${index}`), {
			method: "DELETE",
		});
		return parseResponse(response);
	}

	async events(sid: string, objectId?: string): Promise<EventsPage> {
		const suffix = objectId ? `?object=${encodeURIComponent(objectId)}` : "";
		return parseResponse(await fetch(this.url(`/sessions/${sid}/events${suffix}`)));
	}

	async objects(sid: string, type?: string): Promise<ObjectsPage> {
		const suffix = type ? `?type=${encodeURIComponent(type)}` : "";
		return parseResponse(await fetch(this.url(`/sessions/${sid}/objects${suffix}`)));
	}

	async conformance(
		sid: string,
		check: "count" | "duration",
		zeta: number,
	): Promise<ReportDoc> {
		return parseResponse(
			await fetch(this.url(`/sessions/${sid}/conformance/${check}?zeta=${zeta}`)),
		);
	}

	async applyConformance(
		sid: string,
		check: "count" | "duration",
		zeta: number,
	): Promise<ApplySummary> {
		const response = await fetch(this.url(`/sessions/${sid}/conformance/apply`), {
			method: "POST",
			headers: { "Content-Type": "application/json" },
			body: JSON.stringify({ check, zeta }),
		});
		return parseResponse(response);
	}

	downloadUrl(sid: string, format: "jsonocel" | "xmlocel"): string {
		return this.url(`/sessions/${sid}/download?format=${format}`);
	}

	flattenUrl(sid: string, type: string): string {
		return this.url(`/sessions/${sid}/flatten/${encodeURIComponent(type)}?format=xes`);
	}
}
