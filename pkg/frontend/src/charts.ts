// Small dependency-free SVG charts for the statistics page.

const SVG_NS = "http://www.w3.org/2000/svg";

const ACTIVITY_PALETTE = [
	"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
	"#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

function el<K extends keyof SVGElementTagNameMap>(
	tag: K,
	attrs: Record<string, string>,
	text?: string,
): SVGElementTagNameMap[K] {
	const node = document.createElementNS(SVG_NS, tag);
	for (const [name, value] of Object.entries(attrs)) {
		node.setAttribute(name, value);
	}
	if (text !== undefined) {
		node.textContent = text;
	}
	return node;
}

function chartShell(title: string, width: number, height: number): {
	wrapper: HTMLElement;
	svg: SVGSVGElement;
} {
	const wrapper = document.createElement("figure");
	wrapper.className = "chart";
	const caption = document.createElement("figcaption");
	caption.textContent = title;
	const svg = el("svg", {
		viewBox: `0 0 ${width} ${height}`,
		width: String(width),
		height: String(height),
	});
	wrapper.appendChild(caption);
	wrapper.appendChild(svg);
	return { wrapper, svg };
}

/** Horizontal bar chart over labeled counts (sorted by label). */
export function barChart(title: string, entries: Array<[string, number]>): HTMLElement {
	const rows = [...entries].sort((a, b) => a[0].localeCompare(b[0]));
	const rowHeight = 22;
	const labelWidth = Math.max(60, ...rows.map(([label]) => label.length * 7));
	const width = labelWidth + 260;
	const { wrapper, svg } = chartShell(title, width, rows.length * rowHeight + 8);
	const max = Math.max(1, ...rows.map(([, value]) => value));
	rows.forEach(([label, value], index) => {
		const y = index * rowHeight + 4;
		svg.appendChild(
			el("text", { x: String(labelWidth - 6), y: String(y + 13), "text-anchor": "end", class: "bar-label" }, label),
		);
		svg.appendChild(
			el("rect", {
				x: String(labelWidth),
				y: String(y),
				width: String((value / max) * 200),
				height: String(rowHeight - 6),
				class: "bar",
			}),
		);
		svg.appendChild(
			el("text", { x: String(labelWidth + (value / max) * 200 + 6), y: String(y + 13), class: "bar-value" }, String(value)),
		);
	});
	return wrapper;
}

/** Histogram over integer buckets, e.g. lifecycle lengths. */
export function histogram(title: string, pairs: Array<[number, number]>): HTMLElement {
	return barChart(title, pairs.map(([k, v]) => [String(k), v] as [string, number]));
}

/** Event counts over equal-width time buckets. */
export function timeSeries(
	title: string,
	counts: number[],
	start: string | null,
	end: string | null,
): HTMLElement {
	const width = Math.max(260, counts.length * 10 + 40);
	const height = 120;
	const { wrapper, svg } = chartShell(
		`${title}${start ? ` (${start} .. ${end})` : ""}`,
		width,
		height,
	);
	const max = Math.max(1, ...counts);
	const barWidth = counts.length > 0 ? (width - 20) / counts.length : 0;
	counts.forEach((count, index) => {
		const barHeight = (count / max) * (height - 26);
		svg.appendChild(
			el("rect", {
				x: String(10 + index * barWidth),
				y: String(height - 10 - barHeight),
				width: String(Math.max(1, barWidth - 2)),
				height: String(barHeight),
				class: "bar",
			}),
		);
	});
	return wrapper;
}

/** Dotted chart: one lane per object, x by time, color by activity. */
export function dottedChart(
	laneType: string | null,
	points: Array<{ timestamp: string; lane: string; activity: string }>,
): HTMLElement {
	const lanes = [...new Set(points.map((p) => p.lane))].sort();
	const activities = [...new Set(points.map((p) => p.activity))].sort();
	const colorOf = (activity: string) =>
		ACTIVITY_PALETTE[activities.indexOf(activity) % ACTIVITY_PALETTE.length];
	const times = points.map((p) => Date.parse(p.timestamp));
	const low = Math.min(...times);
	const span = Math.max(1, Math.max(...times) - low);
	const laneWidth = Math.max(60, ...lanes.map((l) => l.length * 7));
	const width = laneWidth + 420;
	const height = lanes.length * 20 + 30;
	const { wrapper, svg } = chartShell(
		laneType ? `dotted chart (lanes: ${laneType})` : "dotted chart",
		width,
		Math.max(height, 50),
	);
	lanes.forEach((lane, index) => {
		svg.appendChild(
			el("text", { x: String(laneWidth - 6), y: String(index * 20 + 18), "text-anchor": "end", class: "bar-label" }, lane),
		);
	});
	for (const point of points) {
		const x = laneWidth + ((Date.parse(point.timestamp) - low) / span) * 390 + 8;
		const y = lanes.indexOf(point.lane) * 20 + 14;
		const dot = el("circle", {
			cx: String(x),
			cy: String(y),
			r: "5",
			fill: colorOf(point.activity),
		});
		dot.appendChild(el("title", {}, `${point.activity} @ ${point.timestamp}`));
		svg.appendChild(dot);
	}
	const legend = document.createElement("div");
	legend.className = "legend";
	for (const activity of activities) {
		const item = document.createElement("span");
		item.className = "legend-item";
		item.style.setProperty("--swatch", colorOf(activity));
		item.textContent = activity;
		legend.appendChild(item);
	}
	wrapper.appendChild(legend);
	return wrapper;
}
