// SVG rendering of the process schema.  Activities are boxes carrying the
// overall metric triple plus one colored row per object type; edges are
// colored by type and labeled with the selected metric; every object type
// contributes a start and an end node.

import { edgeId, edgeLabel, layoutModel, type LayoutEdge, type LayoutNode } from "./layout.js";
import type { EdgeDoc, Metric, ModelDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderCallbacks {
	onActivityClick?: (name: string, event: MouseEvent) => void;
	onEdgeClick?: (edge: EdgeDoc, event: MouseEvent) => void;
}

function svgElement<K extends keyof SVGElementTagNameMap>(
	tag: K,
	attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
	const element = document.createElementNS(SVG_NS, tag);
	for (const [name, value] of Object.entries(attrs)) {
		element.setAttribute(name, value);
	}
	return element;
}

function markerId(color: string): string {
	return `arrow-${color.replace(/[^a-zA-Z0-9]/g, "")}`;
}

function renderDefs(svg: SVGSVGElement, colors: string[]): void {
	const defs = svgElement("defs", {});
	for (const color of colors) {
		const marker = svgElement("marker", {
			id: markerId(color),
			viewBox: "0 0 10 10",
			refX: "9",
			refY: "5",
			markerWidth: "7",
			markerHeight: "7",
			orient: "auto-start-reverse",
		});
		marker.appendChild(svgElement("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: color }));
		defs.appendChild(marker);
	}
	svg.appendChild(defs);
}

function pathData(edge: LayoutEdge): string {
	const [first, ...rest] = edge.points;
	if (edge.selfLoop && edge.points.length === 4) {
		const [a, b, c, d] = edge.points;
		return `M ${a.x} ${a.y} C ${b.x} ${b.y}, ${c.x} ${c.y}, ${d.x} ${d.y}`;
	}
	return `M ${first.x} ${first.y} ` + rest.map((p) => `L ${p.x} ${p.y}`).join(" ");
}

function renderEdge(
	svg: SVGSVGElement,
	edge: LayoutEdge,
	color: string,
	metric: Metric,
	callbacks: RenderCallbacks,
): void {
	const group = svgElement("g", { class: "edge" });
	group.setAttribute("data-edge-id", edge.id);
	group.setAttribute("data-edge-type", edge.doc.type);
	const path = svgElement("path", {
		d: pathData(edge),
		fill: "none",
		stroke: color,
		"stroke-width": "2",
		"marker-end": `url(#${markerId(color)})`,
	});
	group.appendChild(path);
	const label = svgElement("text", {
		x: String(edge.labelAt.x),
		y: String(edge.labelAt.y),
		fill: color,
		class: "edge-label",
		"text-anchor": "middle",
	});
	label.textContent = edgeLabel(edge.doc, metric);
	group.appendChild(label);
	group.addEventListener("click", (event) => {
		callbacks.onEdgeClick?.(edge.doc, event as MouseEvent);
	});
	svg.appendChild(group);
}

function renderActivity(
	svg: SVGSVGElement,
	node: LayoutNode,
	typeColors: Record<string, string>,
	callbacks: RenderCallbacks,
): void {
	const group = svgElement("g", { class: "node activity" });
	group.setAttribute("data-node-id", node.id);
	group.setAttribute("data-node-kind", "activity");
	group.appendChild(
		svgElement("rect", {
			x: String(node.x),
			y: String(node.y),
			rx: "6",
			width: String(node.width),
			height: String(node.height),
			class: "activity-box",
		}),
	);
	node.labelLines.forEach((line, index) => {
		const text = svgElement("text", {
			x: String(node.x + node.width / 2),
			y: String(node.y + 16 + index * 16),
			"text-anchor": "middle",
			class: index === 0 ? "activity-name" : "activity-metrics",
		});
		if (index >= 2) {
			const otype = line.slice(0, line.indexOf(":"));
			text.setAttribute("fill", typeColors[otype] ?? "#333");
		}
		text.textContent = line;
		group.appendChild(text);
	});
	group.addEventListener("click", (event) => {
		callbacks.onActivityClick?.(node.name, event as MouseEvent);
	});
	svg.appendChild(group);
}

function renderEndpoint(
	svg: SVGSVGElement,
	node: LayoutNode,
	color: string,
): void {
	const group = svgElement("g", { class: `node ${node.kind}` });
	group.setAttribute("data-node-id", node.id);
	group.setAttribute("data-node-kind", node.kind);
	const cx = node.x + node.width / 2;
	const cy = node.y + node.height / 2;
	group.appendChild(
		svgElement("circle", {
			cx: String(cx),
			cy: String(cy),
			r: String(node.width / 2),
			fill: color,
			class: "endpoint",
		}),
	);
	if (node.kind === "end") {
		group.appendChild(
			svgElement("circle", {
				cx: String(cx),
				cy: String(cy),
				r: String(node.width / 2 - 5),
				fill: "none",
				stroke: "#ffffff",
				"stroke-width": "2",
			}),
		);
	}
	const title = svgElement("title", {});
	title.textContent = `${node.kind} of ${node.otype}`;
	group.appendChild(title);
	svg.appendChild(group);
}

/** Render the model document into the container (replacing its content). */
export function renderModel(
	container: HTMLElement,
	doc: ModelDoc,
	metric: Metric,
	callbacks: RenderCallbacks = {},
): SVGSVGElement {
	const layout = layoutModel(doc, metric);
	const svg = svgElement("svg", {
		viewBox: `0 0 ${layout.width} ${layout.height}`,
		width: String(layout.width),
		height: String(layout.height),
		class: "model",
	});
	renderDefs(svg, [...new Set(Object.values(doc.type_colors))].sort());
	for (const edge of layout.edges) {
		renderEdge(svg, edge, doc.type_colors[edge.doc.type] ?? "#555", metric, callbacks);
	}
	for (const node of layout.nodes) {
		if (node.kind === "activity") {
			renderActivity(svg, node, doc.type_colors, callbacks);
		} else {
			renderEndpoint(svg, node, doc.type_colors[node.otype ?? ""] ?? "#555");
		}
	}
	container.replaceChildren(svg);
	return svg;
}

/** Swap edge labels in place after a metric switch (no server round-trip). */
export function relabelEdges(svg: SVGSVGElement, doc: ModelDoc, metric: Metric): void {
	const byId = new Map(doc.edges.map((e) => [edgeId(e), e]));
	svg.querySelectorAll("g.edge").forEach((group) => {
		const id = group.getAttribute("data-edge-id") ?? "";
		const edge = byId.get(id);
		const label = group.querySelector("text.edge-label");
		if (edge && label) {
			label.textContent = edgeLabel(edge, metric);
		}
	});
}
