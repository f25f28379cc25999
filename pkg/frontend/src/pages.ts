// Renderers for the events, objects, statistics, and conformance pages.

import { barChart, dottedChart, histogram, timeSeries } from "./charts.js";
import { formatDuration, formatNumber } from "./state.js";
import type { EventsPage, ObjectsPage, ReportDoc, StatsDoc } from "./types.js";

function table(headers: string[], rows: Array<Array<string | HTMLElement>>): HTMLTableElement {
	const element = document.createElement("table");
	const head = element.createTHead().insertRow();
	for (const header of headers) {
		const cell = document.createElement("th");
		cell.textContent = header;
		head.appendChild(cell);
	}
	const body = element.createTBody();
	for (const row of rows) {
		const tr = body.insertRow();
		for (const value of row) {
			const cell = tr.insertCell();
			if (typeof value === "string") {
				cell.textContent = value;
			} else {
				cell.appendChild(value);
			}
		}
	}
	return element;
}

export interface EventsPageCallbacks {
	onFocusObject: (objectId: string) => void;
	onClearFocus: () => void;
}

export function renderEventsPage(
	container: HTMLElement,
	page: EventsPage,
	callbacks: EventsPageCallbacks,
): void {
	container.replaceChildren();
	const controls = document.createElement("div");
	controls.className = "page-controls";
	const input = document.createElement("input");
	input.placeholder = "focus on object id (lifecycle)";
	input.value = page.object ?? "";
	input.id = "focus-object";
	const go = document.createElement("button");
	go.textContent = "focus";
	go.addEventListener("click", () => {
		if (input.value.trim()) {
			callbacks.onFocusObject(input.value.trim());
		} else {
			callbacks.onClearFocus();
		}
	});
	controls.appendChild(input);
	controls.appendChild(go);
	if (page.object) {
		const note = document.createElement("span");
		note.className = "focus-note";
		note.textContent = `lifecycle of ${page.object} (${page.events.length} events)`;
		controls.appendChild(note);
	}
	container.appendChild(controls);
	container.appendChild(
		table(
			["id", "activity", "timestamp", "objects", "attributes"],
			page.events.map((event) => [
				event.id,
				event.activity,
				event.timestamp,
				event.omap.join(", "),
				Object.entries(event.vmap)
					.map(([k, v]) => `${k}=${v}`)
					.join(", "),
			]),
		),
	);
}

export interface ObjectsPageCallbacks {
	onPickType: (type: string | null) => void;
}

export function renderObjectsPage(
	container: HTMLElement,
	page: ObjectsPage,
	types: string[],
	selected: string | null,
	callbacks: ObjectsPageCallbacks,
): void {
	container.replaceChildren();
	const controls = document.createElement("div");
	controls.className = "page-controls";
	const select = document.createElement("select");
	select.id = "object-type-select";
	const all = document.createElement("option");
	all.value = "";
	all.textContent = "all types";
	select.appendChild(all);
	for (const otype of types) {
		const option = document.createElement("option");
		option.value = otype;
		option.textContent = otype;
		option.selected = otype === selected;
		select.appendChild(option);
	}
	select.addEventListener("change", () => {
		callbacks.onPickType(select.value || null);
	});
	controls.appendChild(select);
	container.appendChild(controls);
	container.appendChild(
		table(
			["id", "type", "lifecycle", "trace", "duration", "attributes"],
			page.objects.map((object) => [
				object.id,
				object.type,
				object.lifecycle.join(" → "),
				object.trace.join(" → "),
				formatDuration(object.duration_seconds),
				Object.entries(object.ovmap)
					.map(([k, v]) => `${k}=${v}`)
					.join(", "),
			]),
		),
	);
}

export function renderStatisticsPage(container: HTMLElement, stats: StatsDoc): void {
	container.replaceChildren();
	const grid = document.createElement("div");
	grid.className = "charts";
	grid.appendChild(barChart("objects per type", Object.entries(stats.objects_per_type)));
	grid.appendChild(
		barChart("events per activity", Object.entries(stats.events_per_activity)),
	);
	grid.appendChild(
		histogram("related objects per event", stats.related_objects_per_event),
	);
	grid.appendChild(
		histogram("lifecycle length distribution", stats.lifecycle_length_distribution),
	);
	grid.appendChild(
		timeSeries(
			"events over time",
			stats.events_over_time.counts,
			stats.events_over_time.start,
			stats.events_over_time.end,
		),
	);
	if (stats.dotted_chart.points.length > 0) {
		grid.appendChild(dottedChart(stats.dotted_chart.type, stats.dotted_chart.points));
	}
	container.appendChild(grid);
}

export interface ConformancePageCallbacks {
	onZetaChange: (zeta: number) => void;
	onApply: (check: "count" | "duration") => void;
}

export function renderConformancePage(
	container: HTMLElement,
	zeta: number,
	count: ReportDoc,
	duration: ReportDoc,
	callbacks: ConformancePageCallbacks,
): void {
	container.replaceChildren();
	const controls = document.createElement("div");
	controls.className = "page-controls";
	const label = document.createElement("label");
	label.textContent = "ζ ";
	const input = document.createElement("input");
	input.type = "number";
	input.step = "0.5";
	input.min = "0";
	input.value = String(zeta);
	input.id = "zeta-input";
	input.addEventListener("change", () => {
		const value = Number(input.value);
		if (Number.isFinite(value) && value >= 0) {
			callbacks.onZetaChange(value);
		}
	});
	label.appendChild(input);
	controls.appendChild(label);
	// one-standard-deviation default and the six-sigma preset
	for (const preset of [1, 6]) {
		const button = document.createElement("button");
		button.className = "zeta-preset";
		button.textContent = `ζ = ${preset}`;
		button.addEventListener("click", () => callbacks.onZetaChange(preset));
		controls.appendChild(button);
	}
	container.appendChild(controls);

	const sections: Array<["count" | "duration", string, ReportDoc, string[]]> = [
		[
			"count",
			"number of related objects per activity and type",
			count,
			["activity", "object type", "avg objects", "stdev objects", "deviations"],
		],
		[
			"duration",
			"lifecycle duration per object type",
			duration,
			["object type", "avg duration (s)", "stdev (s)", "deviations"],
		],
	];
	for (const [check, title, report, headers] of sections) {
		const section = document.createElement("section");
		section.className = `conformance-${check}`;
		const heading = document.createElement("h3");
		heading.textContent = title;
		section.appendChild(heading);
		section.appendChild(
			table(
				headers,
				report.rows.map((row) =>
					check === "count"
						? [
								row.activity ?? "-",
								row.object_type ?? "-",
								formatNumber(row.mean),
								formatNumber(row.stdev),
								String(row.num_deviations),
							]
						: [
								row.object_type ?? "-",
								formatNumber(row.mean),
								formatNumber(row.stdev),
								String(row.num_deviations),
							],
				),
			),
		);
		const summary = document.createElement("p");
		summary.className = "violations";
		summary.textContent =
			report.violations.length > 0
				? `${report.violations.length} anomalous ${report.target}: ${report.violations.join(", ")}`
				: `no anomalous ${report.target}`;
		section.appendChild(summary);
		const apply = document.createElement("button");
		apply.textContent = `keep only the anomalous ${report.target}`;
		apply.className = `apply-${check}`;
		apply.addEventListener("click", () => callbacks.onApply(check));
		section.appendChild(apply);
		container.appendChild(section);
	}
}
