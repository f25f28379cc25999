// @vitest-environment jsdom
import { describe, expect, it, vi } from "vitest";

import { relabelEdges, renderModel } from "../src/render.js";
import { emptyModel, sampleModel } from "./fixtures.js";

describe("renderModel", () => {
	it("draws activity boxes with overall and per-type annotation rows", () => {
		const container = document.createElement("div");
		renderModel(container, sampleModel(), "UO");
		const boxes = container.querySelectorAll('[data-node-kind="activity"]');
		expect(boxes).toHaveLength(2);
		const pick = container.querySelector('[data-node-id="activity:pick"]');
		expect(pick?.textContent).toContain("pick");
		expect(pick?.textContent).toContain("E 3 · UO 4 · TO 5");
		expect(pick?.textContent).toContain("item: 3/3/3");
		expect(pick?.textContent).toContain("order: 2/1/2");
	});

	it("draws per-type start/end nodes and typed colored edges", () => {
		const container = document.createElement("div");
		renderModel(container, sampleModel(), "UO");
		expect(container.querySelectorAll('[data-node-kind="start"]')).toHaveLength(2);
		expect(container.querySelectorAll('[data-node-kind="end"]')).toHaveLength(2);
		const edges = container.querySelectorAll("g.edge");
		expect(edges).toHaveLength(5);
		const itemEdge = container.querySelector(
			'[data-edge-id="activity:pick|item|activity:pack"] path',
		);
		expect(itemEdge?.getAttribute("stroke")).toBe("#1f77b4");
		const orderEdge = container.querySelector(
			'[data-edge-id="activity:pick|order|activity:pack"] path',
		);
		expect(orderEdge?.getAttribute("stroke")).toBe("#d62728");
	});

	it("labels edges with the selected metric and relabels locally", () => {
		const container = document.createElement("div");
		const doc = sampleModel();
		const svg = renderModel(container, doc, "UO");
		const label = () =>
			container.querySelector(
				'[data-edge-id="activity:pick|item|activity:pack"] text.edge-label',
			)?.textContent;
		expect(label()).toBe("UO 2");
		relabelEdges(svg, doc, "TO");
		expect(label()).toBe("TO 4");
		relabelEdges(svg, doc, "E_EC");
		expect(label()).toBe("E/EC 2");
	});

	it("renders an empty model as endpoints only, without crashing", () => {
		const container = document.createElement("div");
		renderModel(container, emptyModel(), "UO");
		expect(container.querySelectorAll('[data-node-kind="activity"]')).toHaveLength(0);
		expect(container.querySelectorAll('[data-node-kind="start"]')).toHaveLength(1);
		expect(container.querySelectorAll('[data-node-kind="end"]')).toHaveLength(1);
	});

	it("invokes click callbacks for activities and edges", () => {
		const container = document.createElement("div");
		document.body.appendChild(container);
		const onActivityClick = vi.fn();
		const onEdgeClick = vi.fn();
		renderModel(container, sampleModel(), "UO", { onActivityClick, onEdgeClick });
		(container.querySelector('[data-node-id="activity:pick"]') as SVGGElement).dispatchEvent(
			new MouseEvent("click", { bubbles: true }),
		);
		expect(onActivityClick).toHaveBeenCalledWith("pick", expect.anything());
		(container.querySelector(
			'[data-edge-id="activity:pick|order|activity:pack"]',
		) as SVGGElement).dispatchEvent(new MouseEvent("click", { bubbles: true }));
		expect(onEdgeClick).toHaveBeenCalledTimes(1);
		expect(onEdgeClick.mock.calls[0][0].type).toBe("order");
	});
});
