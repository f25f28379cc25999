// Layered layout for the multigraph: cycle-tolerant longest-path layering,
// barycenter ordering inside layers, deterministic coordinates.  The server
// only sends topology and annotations; all geometry happens here.

import { edgeMetricValue, metricLabel, nodeMetricValue } from "./state.js";
import type { EdgeDoc, Metric, ModelDoc, NodeRef } from "./types.js";

export interface Point {
	x: number;
	y: number;
}

export interface LayoutNode {
	id: string;
	kind: "activity" | "start" | "end";
	name: string;
	otype?: string;
	labelLines: string[];
	x: number;
	y: number;
	width: number;
	height: number;
}

export interface LayoutEdge {
	id: string;
	doc: EdgeDoc;
	points: Point[];
	selfLoop: boolean;
	labelAt: Point;
}

export interface ModelLayout {
	nodes: LayoutNode[];
	edges: LayoutEdge[];
	width: number;
	height: number;
}

const COLUMN_GAP = 70;
const ROW_GAP = 26;
const ENDPOINT_SIZE = 30;
const CHAR_WIDTH = 7.2;
const LINE_HEIGHT = 16;
const MARGIN = 24;

export function refId(ref: NodeRef): string {
	return ref.kind === "activity" ? `activity:${ref.name}` : `${ref.kind}:${ref.type}`;
}

export function edgeId(edge: EdgeDoc): string {
	return `${refId(edge.source)}|${edge.type}|${refId(edge.target)}`;
}

function findBackEdges(ids: string[], adjacency: Map<string, string[]>): Set<string> {
	// iterative DFS in deterministic order; an edge into a node on the
	// current stack closes a cycle and is ignored by the layering
	const WHITE = 0;
	const GRAY = 1;
	const BLACK = 2;
	const color = new Map(ids.map((id) => [id, WHITE]));
	const back = new Set<string>();
	for (const root of ids) {
		if (color.get(root) !== WHITE) {
			continue;
		}
		const stack: Array<[string, number]> = [[root, 0]];
		color.set(root, GRAY);
		while (stack.length > 0) {
			const top = stack[stack.length - 1];
			const neighbors = adjacency.get(top[0]) ?? [];
			if (top[1] >= neighbors.length) {
				color.set(top[0], BLACK);
				stack.pop();
				continue;
			}
			const next = neighbors[top[1]];
			top[1] += 1;
			if (color.get(next) === GRAY) {
				back.add(JSON.stringify([top[0], next]));
			} else if (color.get(next) === WHITE) {
				color.set(next, GRAY);
				stack.push([next, 0]);
			}
		}
	}
	return back;
}

function assignLayers(ids: string[], pairs: Array<[string, string]>): Map<string, number> {
	const adjacency = new Map<string, string[]>(ids.map((id) => [id, []]));
	const unique = [...new Set(pairs.map((pair) => JSON.stringify(pair)))].map(
		(key) => JSON.parse(key) as [string, string],
	);
	for (const [src, dst] of unique) {
		adjacency.get(src)?.push(dst);
	}
	for (const list of adjacency.values()) {
		list.sort();
	}
	// rooting the cycle-breaking DFS at the per-type start nodes keeps the
	// natural flow direction when rework loops close a cycle
	const roots = [...ids].sort((a, b) => {
		const aRank = a.startsWith("start:") ? 0 : 1;
		const bRank = b.startsWith("start:") ? 0 : 1;
		return aRank - bRank || a.localeCompare(b);
	});
	const back = findBackEdges(roots, adjacency);
	const forward = unique.filter((pair) => !back.has(JSON.stringify(pair)));
	const incoming = new Map<string, number>(ids.map((id) => [id, 0]));
	for (const [, dst] of forward) {
		incoming.set(dst, (incoming.get(dst) ?? 0) + 1);
	}
	const layer = new Map<string, number>(ids.map((id) => [id, 0]));
	const queue = ids.filter((id) => incoming.get(id) === 0).sort();
	const order: string[] = [];
	while (queue.length > 0) {
		const node = queue.shift() as string;
		order.push(node);
		for (const [src, dst] of forward) {
			if (src !== node) {
				continue;
			}
			layer.set(dst, Math.max(layer.get(dst) ?? 0, (layer.get(node) ?? 0) + 1));
			incoming.set(dst, (incoming.get(dst) ?? 1) - 1);
			if (incoming.get(dst) === 0) {
				queue.push(dst);
				queue.sort();
			}
		}
	}
	return layer;
}

function orderWithinLayers(
	layers: string[][],
	pairs: Array<[string, string]>,
): string[][] {
	const position = new Map<string, number>();
	const neighbors = new Map<string, string[]>();
	for (const [src, dst] of pairs) {
		if (!neighbors.has(src)) neighbors.set(src, []);
		if (!neighbors.has(dst)) neighbors.set(dst, []);
		neighbors.get(src)?.push(dst);
		neighbors.get(dst)?.push(src);
	}
	const refresh = () => {
		layers.forEach((layer) => layer.forEach((id, i) => position.set(id, i)));
	};
	refresh();
	for (let sweep = 0; sweep < 4; sweep++) {
		for (const layer of layers) {
			const barycenter = (id: string): number => {
				const linked = neighbors.get(id) ?? [];
				const spots = linked
					.map((n) => position.get(n))
					.filter((p): p is number => p !== undefined);
				if (spots.length === 0) {
					return position.get(id) ?? 0;
				}
				return spots.reduce((a, b) => a + b, 0) / spots.length;
			};
			layer.sort((a, b) => {
				const diff = barycenter(a) - barycenter(b);
				return diff !== 0 ? diff : a.localeCompare(b);
			});
			refresh();
		}
	}
	return layers;
}

function activityLabelLines(doc: ModelDoc, name: string, metric: Metric): string[] {
	const activity = doc.activities.find((a) => a.name === name);
	if (!activity) {
		return [name];
	}
	const m = activity.metrics;
	const lines = [name, `E ${m.events} · UO ${m.unique_objects} · TO ${m.total_objects}`];
	for (const otype of Object.keys(activity.per_type).sort()) {
		const t = activity.per_type[otype];
		lines.push(`${otype}: ${t.events}/${t.unique_objects}/${t.total_objects}`);
	}
	return lines;
}

export function layoutModel(doc: ModelDoc, metric: Metric): ModelLayout {
	const ids = new Set<string>();
	for (const activity of doc.activities) {
		ids.add(`activity:${activity.name}`);
	}
	for (const otype of doc.object_types) {
		ids.add(`start:${otype}`);
		ids.add(`end:${otype}`);
	}
	for (const edge of doc.edges) {
		ids.add(refId(edge.source));
		ids.add(refId(edge.target));
	}
	const sorted = [...ids].sort();
	const pairs: Array<[string, string]> = doc.edges
		.filter((e) => refId(e.source) !== refId(e.target))
		.map((e) => [refId(e.source), refId(e.target)]);
	const layerOf = assignLayers(sorted, pairs);
	// end nodes read better pinned to the last column
	const maxLayer = Math.max(0, ...layerOf.values());
	for (const id of sorted) {
		if (id.startsWith("end:") && (layerOf.get(id) ?? 0) > 0) {
			layerOf.set(id, maxLayer);
		}
	}

	const byLayer: string[][] = [];
	for (const id of sorted) {
		const layer = layerOf.get(id) ?? 0;
		while (byLayer.length <= layer) {
			byLayer.push([]);
		}
		byLayer[layer].push(id);
	}
	orderWithinLayers(byLayer, pairs);

	const nodes = new Map<string, LayoutNode>();
	for (const id of sorted) {
		const [kind, rest] = [id.slice(0, id.indexOf(":")), id.slice(id.indexOf(":") + 1)];
		if (kind === "activity") {
			const labelLines = activityLabelLines(doc, rest, metric);
			const width = Math.max(...labelLines.map((l) => l.length)) * CHAR_WIDTH + 24;
			const height = labelLines.length * LINE_HEIGHT + 14;
			nodes.set(id, {
				id,
				kind: "activity",
				name: rest,
				labelLines,
				x: 0,
				y: 0,
				width,
				height,
			});
		} else {
			nodes.set(id, {
				id,
				kind: kind as "start" | "end",
				name: rest,
				otype: rest,
				labelLines: [],
				x: 0,
				y: 0,
				width: ENDPOINT_SIZE,
				height: ENDPOINT_SIZE,
			});
		}
	}

	const layerHeights = byLayer.map((layer) =>
		layer.reduce((sum, id) => sum + (nodes.get(id)?.height ?? 0) + ROW_GAP, -ROW_GAP),
	);
	const tallest = Math.max(0, ...layerHeights);
	let x = MARGIN;
	byLayer.forEach((layer, index) => {
		const columnWidth = Math.max(0, ...layer.map((id) => nodes.get(id)?.width ?? 0));
		let y = MARGIN + (tallest - layerHeights[index]) / 2;
		for (const id of layer) {
			const node = nodes.get(id);
			if (!node) {
				continue;
			}
			node.x = x + (columnWidth - node.width) / 2;
			node.y = y;
			y += node.height + ROW_GAP;
		}
		x += columnWidth + COLUMN_GAP;
	});

	// parallel edges between the same pair fan out vertically by type
	const parallel = new Map<string, string[]>();
	for (const edge of doc.edges) {
		const key = `${refId(edge.source)}>${refId(edge.target)}`;
		if (!parallel.has(key)) {
			parallel.set(key, []);
		}
		parallel.get(key)?.push(edge.type);
	}
	for (const list of parallel.values()) {
		list.sort();
	}

	const edges: LayoutEdge[] = [];
	const orderedDocs = [...doc.edges].sort((a, b) => edgeId(a).localeCompare(edgeId(b)));
	for (const edge of orderedDocs) {
		const src = nodes.get(refId(edge.source));
		const dst = nodes.get(refId(edge.target));
		if (!src || !dst) {
			continue;
		}
		if (src.id === dst.id) {
			const top = { x: src.x + src.width / 2, y: src.y };
			const points = [
				{ x: top.x - 14, y: top.y },
				{ x: top.x - 22, y: top.y - 34 },
				{ x: top.x + 22, y: top.y - 34 },
				{ x: top.x + 14, y: top.y },
			];
			edges.push({
				id: edgeId(edge),
				doc: edge,
				points,
				selfLoop: true,
				labelAt: { x: top.x, y: top.y - 40 },
			});
			continue;
		}
		const key = `${src.id}>${dst.id}`;
		const family = parallel.get(key) ?? [edge.type];
		const offset = (family.indexOf(edge.type) - (family.length - 1) / 2) * 10;
		const from = { x: src.x + src.width, y: src.y + src.height / 2 + offset };
		const to = { x: dst.x, y: dst.y + dst.height / 2 + offset };
		if (dst.x < src.x + src.width) {
			// leftward edge: route below both nodes, fanned out by type
			const below = Math.max(src.y + src.height, dst.y + dst.height) + 24 + offset * 1.5;
			const start = { x: src.x + src.width / 2 + offset, y: src.y + src.height };
			const end = { x: dst.x + dst.width / 2 + offset, y: dst.y + dst.height };
			edges.push({
				id: edgeId(edge),
				doc: edge,
				points: [start, { x: start.x, y: below }, { x: end.x, y: below }, end],
				selfLoop: false,
				labelAt: { x: (start.x + end.x) / 2, y: below + 12 },
			});
			continue;
		}
		edges.push({
			id: edgeId(edge),
			doc: edge,
			points: [from, to],
			selfLoop: false,
			labelAt: { x: (from.x + to.x) / 2, y: (from.y + to.y) / 2 - 6 },
		});
	}

	const width = Math.max(
		...[...nodes.values()].map((n) => n.x + n.width),
		...edges.flatMap((e) => e.points.map((p) => p.x)),
		200,
	);
	const height = Math.max(
		...[...nodes.values()].map((n) => n.y + n.height),
		...edges.flatMap((e) => e.points.map((p) => p.y)),
		120,
	);
	return { nodes: [...nodes.values()], edges, width: width + MARGIN, height: height + MARGIN };
}

export function sliderTicks(maxValue: number): number[] {
	// percentile-style tick marks over the absolute frequency scale
	const ticks = [0, 0.25, 0.5, 0.75, 1].map((q) => Math.round(q * maxValue));
	return [...new Set(ticks)];
}

export function edgeLabel(edge: EdgeDoc, metric: Metric): string {
	// computed from the full metric triple so a metric switch relabels
	// without a discovery round-trip
	return `${metricLabel(metric)} ${edgeMetricValue(edge.metrics, metric)}`;
}

export function maxNodeValue(doc: ModelDoc, metric: Metric): number {
	return Math.max(0, ...doc.activities.map((a) => nodeMetricValue(a.metrics, metric)));
}

export function maxEdgeValue(doc: ModelDoc, metric: Metric): number {
	return Math.max(0, ...doc.edges.map((e) => edgeMetricValue(e.metrics, metric)));
}
