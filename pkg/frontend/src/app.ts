// The single-page explorer: process schema with click-to-filter and
// frequency sliders, plus the events / objects / statistics / conformance
// pages.  Every state-changing interaction round-trips through the API; the
// client renders but never decides semantics.

import { ApiClient, ApiRequestError } from "./api.js";
import { maxEdgeValue, maxNodeValue, sliderTicks } from "./layout.js";
import {
	renderConformancePage,
	renderEventsPage,
	renderObjectsPage,
	renderStatisticsPage,
} from "./pages.js";
import { relabelEdges, renderModel } from "./render.js";
import {
	METRICS,
	type Page,
	type ViewState,
	edgeActionLabel,
	edgeCriterion,
	edgeMetricValue,
	hasConsecutivePair,
	initialState,
	keepActivity,
	metricLabel,
	objectsEndingWith,
	objectsRelatedTo,
	objectsStartingWith,
	removeActivity,
} from "./state.js";
import type { CriterionDoc, EdgeDoc, Metric, ModelDoc } from "./types.js";

const PAGES: Array<[Page, string]> = [
	["schema", "Process schema"],
	["events", "Events"],
	["objects", "Objects"],
	["statistics", "Statistics"],
	["conformance", "Conformance"],
];

const SLIDER_DEBOUNCE_MS = 150;

export class App {
	readonly state: ViewState = initialState();
	private lastModel: ModelDoc | null = null;
	private modelSvg: SVGSVGElement | null = null;
	private zeta = 1;
	private focusObject: string | null = null;
	private objectType: string | null = null;
	private sliderTimer: ReturnType<typeof setTimeout> | null = null;
	private mutations: Promise<unknown> = Promise.resolve();

	// shell elements, created in renderShell()
	private main!: HTMLElement;
	private banner!: HTMLElement;
	private chainBox!: HTMLElement;
	private totalsBox!: HTMLElement;
	private nodeSlider!: HTMLInputElement;
	private edgeSlider!: HTMLInputElement;
	private downloadsBox!: HTMLElement;
	private menuLayer!: HTMLElement;

	constructor(
		private readonly root: HTMLElement,
		private readonly api: ApiClient,
	) {}

	async boot(): Promise<void> {
		const sid = (globalThis.location?.hash ?? "").replace(/^#/, "");
		if (sid) {
			try {
				await this.enterSession(sid);
				return;
			} catch {
				// stale hash: fall through to the upload page
			}
		}
		this.renderUpload();
	}

	// -- upload ---------------------------------------------------------

	private renderUpload(): void {
		this.root.replaceChildren();
		const box = document.createElement("div");
		box.className = "upload";
		const heading = document.createElement("h1");
		heading.textContent = "object-centric process explorer";
		const hint = document.createElement("p");
		hint.textContent = "upload an event log in the JSON-OCEL or XML-OCEL format";
		const input = document.createElement("input");
		input.type = "file";
		input.id = "upload-input";
		input.accept = ".jsonocel,.xmlocel,.json,.xml";
		const button = document.createElement("button");
		button.id = "upload-button";
		button.textContent = "upload";
		const error = document.createElement("p");
		error.className = "error-banner";
		error.hidden = true;
		button.addEventListener("click", () => {
			const file = input.files?.[0];
			if (!file) {
				return;
			}
			void file.arrayBuffer().then(async (buffer) => {
				try {
					await this.uploadLog(new Uint8Array(buffer), file.name);
				} catch (exc) {
					error.hidden = false;
					error.textContent = exc instanceof Error ? exc.message : String(exc);
				}
			});
		});
		box.append(heading, hint, input, button, error);
		this.root.appendChild(box);
	}

	/** Upload a log document and enter the fresh session. */
	async uploadLog(payload: Uint8Array, filename: string): Promise<string> {
		const sid = await this.api.createSession(payload, filename);
		if (globalThis.location) {
			globalThis.location.hash = sid;
		}
		await this.enterSession(sid);
		return sid;
	}

	async enterSession(sid: string): Promise<void> {
		const summary = await this.api.chain(sid);
		this.state.sessionId = sid;
		this.state.chain = summary.chain.steps;
		this.state.general = summary.general;
		this.renderShell();
		await this.loadModel();
		await this.loadPage();
	}

	// -- shell ------------------------------------------------------------

	private renderShell(): void {
		this.root.replaceChildren();
		const header = document.createElement("header");
		const tabs = document.createElement("nav");
		tabs.className = "tabs";
		for (const [page, label] of PAGES) {
			const tab = document.createElement("button");
			tab.className = "tab";
			tab.dataset.page = page;
			tab.textContent = label;
			tab.addEventListener("click", () => void this.setPage(page));
			tabs.appendChild(tab);
		}
		header.appendChild(tabs);

		const toolbar = document.createElement("div");
		toolbar.className = "toolbar";
		const metricSelect = document.createElement("select");
		metricSelect.id = "metric-select";
		for (const metric of METRICS) {
			const option = document.createElement("option");
			option.value = metric;
			option.textContent = metricLabel(metric);
			option.selected = metric === this.state.metric;
			metricSelect.appendChild(option);
		}
		metricSelect.addEventListener("change", () => {
			void this.setMetric(metricSelect.value as Metric);
		});
		toolbar.appendChild(metricSelect);
		this.chainBox = document.createElement("div");
		this.chainBox.id = "chain";
		toolbar.appendChild(this.chainBox);
		header.appendChild(toolbar);

		this.banner = document.createElement("div");
		this.banner.className = "error-banner";
		this.banner.hidden = true;

		const layout = document.createElement("div");
		layout.className = "layout";
		const side = document.createElement("aside");
		this.totalsBox = document.createElement("div");
		this.totalsBox.id = "general-stats";
		side.appendChild(this.totalsBox);

		const sliders = document.createElement("div");
		sliders.className = "sliders";
		this.nodeSlider = this.makeSlider("node-slider", "min activity frequency");
		this.edgeSlider = this.makeSlider("edge-slider", "min edge frequency");
		sliders.append(this.nodeSlider.parentElement as HTMLElement, this.edgeSlider.parentElement as HTMLElement);
		side.appendChild(sliders);

		this.downloadsBox = document.createElement("div");
		this.downloadsBox.className = "downloads";
		side.appendChild(this.downloadsBox);

		this.main = document.createElement("main");
		this.main.id = "page";
		layout.append(side, this.main);

		this.menuLayer = document.createElement("div");
		this.menuLayer.id = "menu-layer";
		document.addEventListener("click", (event) => {
			if (!this.menuLayer.contains(event.target as Node)) {
				this.closeMenu();
			}
		});

		this.root.append(header, this.banner, layout, this.menuLayer);
		this.renderChain();
		this.renderTotals();
		this.highlightTab();
	}

	private makeSlider(id: string, label: string): HTMLInputElement {
		const wrapper = document.createElement("label");
		wrapper.className = "slider";
		const caption = document.createElement("span");
		caption.textContent = label;
		const value = document.createElement("output");
		value.textContent = "0";
		const input = document.createElement("input");
		input.type = "range";
		input.id = id;
		input.min = "0";
		input.max = "10";
		input.step = "1";
		input.value = "0";
		input.addEventListener("input", () => {
			value.textContent = input.value;
			if (this.sliderTimer !== null) {
				clearTimeout(this.sliderTimer);
			}
			this.sliderTimer = setTimeout(() => {
				void this.setThresholds(Number(this.nodeSlider.value), Number(this.edgeSlider.value));
			}, SLIDER_DEBOUNCE_MS);
		});
		wrapper.append(caption, input, value);
		return input;
	}

	private renderTotals(): void {
		const general = this.state.general;
		this.totalsBox.replaceChildren();
		if (!general) {
			return;
		}
		const rows: Array<[string, number]> = [
			["events", general.num_events],
			["unique objects", general.num_unique_objects],
			["total objects", general.num_total_objects],
		];
		for (const [label, value] of rows) {
			const row = document.createElement("div");
			row.className = "total";
			const name = document.createElement("span");
			name.textContent = label;
			const count = document.createElement("strong");
			count.textContent = String(value);
			count.dataset.stat = label.replace(" ", "-");
			row.append(name, count);
			this.totalsBox.appendChild(row);
		}
	}

	private renderChain(): void {
		this.chainBox.replaceChildren();
		const title = document.createElement("span");
		title.className = "chain-title";
		title.textContent = this.state.chain.length > 0 ? "filters:" : "no filters";
		this.chainBox.appendChild(title);
		this.state.chain.forEach((step, index) => {
			const chip = document.createElement("span");
			chip.className = "chain-step";
			chip.textContent = step.label;
			const remove = document.createElement("button");
			remove.className = "chain-remove";
			remove.textContent = "×";
			remove.title = "remove this filter";
			remove.addEventListener("click", () => void this.popStep(index));
			chip.appendChild(remove);
			this.chainBox.appendChild(chip);
		});
	}

	private renderDownloads(): void {
		const sid = this.state.sessionId;
		if (!sid) {
			return;
		}
		this.downloadsBox.replaceChildren();
		const heading = document.createElement("span");
		heading.textContent = "download:";
		this.downloadsBox.appendChild(heading);
		const json = document.createElement("a");
		json.href = this.api.downloadUrl(sid, "jsonocel");
		json.textContent = "JSON-OCEL";
		const xml = document.createElement("a");
		xml.href = this.api.downloadUrl(sid, "xmlocel");
		xml.textContent = "XML-OCEL";
		this.downloadsBox.append(json, xml);
		for (const otype of this.lastModel?.object_types ?? []) {
			const xes = document.createElement("a");
			xes.href = this.api.flattenUrl(sid, otype);
			xes.textContent = `${otype}.xes`;
			this.downloadsBox.appendChild(xes);
		}
	}

	private highlightTab(): void {
		this.root.querySelectorAll<HTMLButtonElement>(".tab").forEach((tab) => {
			tab.classList.toggle("active", tab.dataset.page === this.state.page);
		});
	}

	private showError(message: string): void {
		this.banner.hidden = false;
		this.banner.textContent = message;
	}

	private clearError(): void {
		this.banner.hidden = true;
		this.banner.textContent = "";
	}

	// -- model ------------------------------------------------------------

	async loadModel(): Promise<void> {
		const sid = this.state.sessionId;
		if (!sid) {
			return;
		}
		try {
			const doc = await this.api.model(
				sid,
				this.state.metric,
				this.state.minNode,
				this.state.minEdge,
			);
			this.lastModel = doc;
			this.updateSliderRanges(doc);
			this.renderDownloads();
			if (this.state.page === "schema") {
				this.renderSchema(doc);
			}
			this.clearError();
		} catch (exc) {
			this.showError(exc instanceof Error ? exc.message : String(exc));
		}
	}

	private renderSchema(doc: ModelDoc): void {
		try {
			this.modelSvg = renderModel(this.main, doc, this.state.metric, {
				onActivityClick: (name, event) => this.openActivityMenu(name, event),
				onEdgeClick: (edge, event) => this.openEdgeMenu(edge, event),
			});
		} catch (exc) {
			this.showError(
				`failed to render the model: ${exc instanceof Error ? exc.message : exc}`,
			);
		}
	}

	private updateSliderRanges(doc: ModelDoc): void {
		for (const [slider, max] of [
			[this.nodeSlider, doc.max_node_value],
			[this.edgeSlider, doc.max_edge_value],
		] as Array<[HTMLInputElement, number]>) {
			slider.max = String(Math.max(1, Math.ceil(max)));
			const listId = `${slider.id}-ticks`;
			slider.setAttribute("list", listId);
			let list = document.getElementById(listId);
			if (!list) {
				list = document.createElement("datalist");
				list.id = listId;
				slider.parentElement?.appendChild(list);
			}
			list.replaceChildren(
				...sliderTicks(max).map((tick) => {
					const option = document.createElement("option");
					option.value = String(tick);
					return option;
				}),
			);
		}
	}

	async setMetric(metric: Metric): Promise<void> {
		this.state.metric = metric;
		if (this.state.minNode === 0 && this.state.minEdge === 0 && this.lastModel && this.modelSvg) {
			// thresholds off: the document carries all metrics, relabel locally
			relabelEdges(this.modelSvg, this.lastModel, metric);
			this.updateSliderRanges({
				...this.lastModel,
				max_node_value: maxNodeValue(this.lastModel, metric),
				max_edge_value: maxEdgeValue(this.lastModel, metric),
			});
			return;
		}
		await this.loadModel();
	}

	async setThresholds(minNode: number, minEdge: number): Promise<void> {
		this.state.minNode = minNode;
		this.state.minEdge = minEdge;
		await this.loadModel();
	}

	// -- menus ------------------------------------------------------------

	private closeMenu(): void {
		this.menuLayer.replaceChildren();
	}

	private openMenu(event: MouseEvent, entries: Array<[string, () => void]>, note?: HTMLElement): void {
		this.closeMenu();
		const menu = document.createElement("div");
		menu.className = "context-menu";
		menu.style.left = `${event.pageX ?? 40}px`;
		menu.style.top = `${event.pageY ?? 40}px`;
		for (const [label, action] of entries) {
			const item = document.createElement("button");
			item.className = "menu-item";
			item.textContent = label;
			item.addEventListener("click", () => {
				this.closeMenu();
				action();
			});
			menu.appendChild(item);
		}
		if (note) {
			menu.appendChild(note);
		}
		this.menuLayer.appendChild(menu);
	}

	private openActivityMenu(name: string, event: MouseEvent): void {
		event.stopPropagation();
		const activities = this.lastModel?.activities.map((a) => a.name) ?? [];
		const note = document.createElement("div");
		note.className = "menu-note";
		void this.describeActivityObjects(name, note);
		this.openMenu(event, [
			[`keep activity "${name}" (F1)`, () => void this.pushCriterion(keepActivity(name))],
			[`remove activity "${name}" (F1)`, () => void this.pushCriterion(removeActivity(activities, name))],
			[`keep objects related to "${name}" (F3)`, () => void this.pushCriterion(objectsRelatedTo(name))],
			[`keep objects starting with "${name}" (F4)`, () => void this.pushCriterion(objectsStartingWith(name))],
			[`keep objects ending with "${name}" (F5)`, () => void this.pushCriterion(objectsEndingWith(name))],
		], note);
	}

	private openEdgeMenu(edge: EdgeDoc, event: MouseEvent): void {
		event.stopPropagation();
		const note = document.createElement("div");
		note.className = "menu-note";
		void this.describeEdgeObjects(edge, note);
		this.openMenu(
			event,
			[[`${edgeActionLabel(edge)} (F6)`, () => void this.pushCriterion(edgeCriterion(edge))]],
			note,
		);
	}

	private async describeActivityObjects(name: string, into: HTMLElement): Promise<void> {
		const sid = this.state.sessionId;
		if (!sid) {
			return;
		}
		try {
			const page = await this.api.objects(sid);
			const related = page.objects.filter((o) => o.trace.includes(name));
			const byType = new Map<string, string[]>();
			for (const object of related) {
				if (!byType.has(object.type)) {
					byType.set(object.type, []);
				}
				byType.get(object.type)?.push(object.id);
			}
			into.replaceChildren();
			for (const otype of [...byType.keys()].sort()) {
				const line = document.createElement("div");
				line.textContent = `${otype}: ${(byType.get(otype) ?? []).join(", ")}`;
				into.appendChild(line);
			}
		} catch {
			// listing is informational; the menu stays usable without it
		}
	}

	private async describeEdgeObjects(edge: EdgeDoc, into: HTMLElement): Promise<void> {
		const sid = this.state.sessionId;
		if (!sid) {
			return;
		}
		try {
			const page = await this.api.objects(sid, edge.type);
			const matching = page.objects.filter((object) => {
				if (edge.source.kind === "start") {
					return object.trace[0] === edge.target.name;
				}
				if (edge.target.kind === "end") {
					return object.trace[object.trace.length - 1] === edge.source.name;
				}
				return hasConsecutivePair(object.trace, edge.source.name ?? "", edge.target.name ?? "");
			});
			into.textContent = `${edge.type}: ${matching.map((o) => o.id).join(", ")}`;
		} catch {
			// informational only
		}
	}

	// -- mutations ----------------------------------------------------------

	private enqueue<T>(action: () => Promise<T>): Promise<T> {
		// at most one in-flight mutation per session
		const next = this.mutations.then(action, action);
		this.mutations = next.catch(() => undefined);
		return next;
	}

	/** Resolves once every queued mutation has settled (used by tests). */
	async idle(): Promise<void> {
		await this.mutations;
	}

	async pushCriterion(criterion: CriterionDoc): Promise<void> {
		const sid = this.state.sessionId;
		if (!sid) {
			return;
		}
		await this.enqueue(async () => {
			try {
				const summary = await this.api.pushFilter(sid, criterion);
				this.state.chain = summary.chain.steps;
				this.state.general = summary.general;
				this.renderChain();
				this.renderTotals();
				this.clearError();
			} catch (exc) {
				this.showError(exc instanceof ApiRequestError ? exc.message : String(exc));
				return;
			}
			await this.loadModel();
			await this.loadPage();
		});
	}

	async popStep(index: number): Promise<void> {
		const sid = this.state.sessionId;
		if (!sid) {
			return;
		}
		await this.enqueue(async () => {
			try {
				const summary = await this.api.popFilter(sid, index);
				this.state.chain = summary.chain.steps;
				this.state.general = summary.general;
				this.renderChain();
				this.renderTotals();
				this.clearError();
			} catch (exc) {
				this.showError(exc instanceof ApiRequestError ? exc.message : String(exc));
				return;
			}
			await this.loadModel();
			await this.loadPage();
		});
	}

	async applyConformance(check: "count" | "duration"): Promise<void> {
		const sid = this.state.sessionId;
		if (!sid) {
			return;
		}
		await this.enqueue(async () => {
			try {
				const summary = await this.api.applyConformance(sid, check, this.zeta);
				this.state.chain = summary.chain.steps;
				this.state.general = summary.general;
				this.renderChain();
				this.renderTotals();
				this.clearError();
			} catch (exc) {
				this.showError(exc instanceof ApiRequestError ? exc.message : String(exc));
				return;
			}
			await this.loadModel();
			await this.loadPage();
		});
	}

	// -- pages ----------------------------------------------------------------

	async setPage(page: Page): Promise<void> {
		this.state.page = page;
		this.highlightTab();
		if (page === "schema") {
			if (this.lastModel) {
				this.renderSchema(this.lastModel);
			} else {
				await this.loadModel();
			}
			return;
		}
		await this.loadPage();
	}

	async loadPage(): Promise<void> {
		const sid = this.state.sessionId;
		if (!sid) {
			return;
		}
		try {
			switch (this.state.page) {
				case "schema":
					if (this.lastModel) {
						this.renderSchema(this.lastModel);
					}
					break;
				case "events": {
					const page = await this.api.events(sid, this.focusObject ?? undefined);
					renderEventsPage(this.main, page, {
						onFocusObject: (objectId) => {
							this.focusObject = objectId;
							void this.loadPage();
						},
						onClearFocus: () => {
							this.focusObject = null;
							void this.loadPage();
						},
					});
					break;
				}
				case "objects": {
					const page = await this.api.objects(sid, this.objectType ?? undefined);
					renderObjectsPage(
						this.main,
						page,
						this.lastModel?.object_types ?? [],
						this.objectType,
						{
							onPickType: (type) => {
								this.objectType = type;
								void this.loadPage();
							},
						},
					);
					break;
				}
				case "statistics": {
					const stats = await this.api.stats(sid);
					renderStatisticsPage(this.main, stats);
					break;
				}
				case "conformance": {
					const [count, duration] = await Promise.all([
						this.api.conformance(sid, "count", this.zeta),
						this.api.conformance(sid, "duration", this.zeta),
					]);
					renderConformancePage(this.main, this.zeta, count, duration, {
						onZetaChange: (zeta) => {
							this.zeta = zeta;
							void this.loadPage();
						},
						onApply: (check) => void this.applyConformance(check),
					});
					break;
				}
			}
			this.clearError();
		} catch (exc) {
			this.showError(exc instanceof Error ? exc.message : String(exc));
		}
	}
}
