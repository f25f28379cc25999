import { describe, expect, it } from "vitest";

import { edgeId, layoutModel, refId, sliderTicks } from "../src/layout.js";
import { emptyModel, sampleModel } from "./fixtures.js";

describe("layout", () => {
	it("assigns every node coordinates and sizes", () => {
		const layout = layoutModel(sampleModel(), "UO");
		expect(layout.nodes).toHaveLength(6); // 2 activities + 2 starts + 2 ends
		for (const node of layout.nodes) {
			expect(node.width).toBeGreaterThan(0);
			expect(node.height).toBeGreaterThan(0);
			expect(Number.isFinite(node.x)).toBe(true);
			expect(Number.isFinite(node.y)).toBe(true);
		}
		expect(layout.width).toBeGreaterThan(0);
		expect(layout.height).toBeGreaterThan(0);
	});

	it("orders start nodes before their activities", () => {
		const layout = layoutModel(sampleModel(), "UO");
		const byId = new Map(layout.nodes.map((n) => [n.id, n]));
		const start = byId.get("start:item");
		const pick = byId.get("activity:pick");
		const pack = byId.get("activity:pack");
		expect(start && pick && pack).toBeTruthy();
		expect(start!.x).toBeLessThan(pick!.x);
		expect(pick!.x).toBeLessThan(pack!.x);
	});

	it("survives cycles (rework loops) without hanging or dropping edges", () => {
		const layout = layoutModel(sampleModel(), "UO");
		expect(layout.edges).toHaveLength(5);
	});

	it("is deterministic", () => {
		const a = layoutModel(sampleModel(), "UO");
		const b = layoutModel(sampleModel(), "UO");
		expect(JSON.stringify(a)).toBe(JSON.stringify(b));
	});

	it("keeps nodes in one layer from overlapping", () => {
		const layout = layoutModel(sampleModel(), "UO");
		const byX = new Map<number, Array<[number, number]>>();
		for (const node of layout.nodes) {
			if (!byX.has(node.x)) {
				byX.set(node.x, []);
			}
			byX.get(node.x)?.push([node.y, node.y + node.height]);
		}
		for (const spans of byX.values()) {
			spans.sort((p, q) => p[0] - q[0]);
			for (let i = 0; i + 1 < spans.length; i++) {
				expect(spans[i][1]).toBeLessThanOrEqual(spans[i + 1][0]);
			}
		}
	});

	it("renders an empty model as endpoints only", () => {
		const layout = layoutModel(emptyModel(), "UO");
		expect(layout.nodes.map((n) => n.kind).sort()).toEqual(["end", "start"]);
		expect(layout.edges).toHaveLength(0);
	});

	it("separates parallel edges of different types", () => {
		const layout = layoutModel(sampleModel(), "UO");
		const parallel = layout.edges.filter(
			(e) => refId(e.doc.source) === "activity:pick" && refId(e.doc.target) === "activity:pack",
		);
		expect(parallel).toHaveLength(2);
		const [first, second] = parallel;
		expect(first.points[0].y).not.toBe(second.points[0].y);
	});

	it("builds stable ids", () => {
		const model = sampleModel();
		expect(refId(model.edges[0].source)).toBe("start:item");
		expect(edgeId(model.edges[1])).toBe("activity:pick|item|activity:pack");
	});

	it("produces percentile-style slider ticks", () => {
		expect(sliderTicks(4)).toEqual([0, 1, 2, 3, 4]);
		expect(sliderTicks(0)).toEqual([0]);
		expect(sliderTicks(100)).toEqual([0, 25, 50, 75, 100]);
	});
});
