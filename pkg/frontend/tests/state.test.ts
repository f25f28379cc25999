import { describe, expect, it } from "vitest";

import {
	edgeActionLabel,
	edgeCriterion,
	edgeMetricValue,
	formatDuration,
	hasConsecutivePair,
	initialState,
	keepActivity,
	nodeMetricValue,
	removeActivity,
} from "../src/state.js";
import { sampleModel } from "./fixtures.js";

describe("metric selection", () => {
	it("selects the annotation matching the metric choice", () => {
		const metrics = { events: 2, unique_objects: 4, total_objects: 5 };
		expect(nodeMetricValue(metrics, "E_EC")).toBe(2);
		expect(nodeMetricValue(metrics, "UO")).toBe(4);
		expect(nodeMetricValue(metrics, "TO")).toBe(5);
		const edge = { event_couples: 1, unique_objects: 2, total_objects: 3 };
		expect(edgeMetricValue(edge, "E_EC")).toBe(1);
		expect(edgeMetricValue(edge, "UO")).toBe(2);
		expect(edgeMetricValue(edge, "TO")).toBe(3);
	});
});

describe("criterion builders", () => {
	it("keep/remove activity build complementary activity subsets", () => {
		expect(keepActivity("pick")).toEqual({
			kind: "activity-subset",
			activities: ["pick"],
		});
		expect(removeActivity(["pick", "pack", "ship"], "pack")).toEqual({
			kind: "activity-subset",
			activities: ["pick", "ship"],
		});
	});

	it("maps edges to path / start / end filters", () => {
		const model = sampleModel();
		expect(edgeCriterion(model.edges[1])).toEqual({
			kind: "path",
			source: "pick",
			target: "pack",
		});
		expect(edgeCriterion(model.edges[0])).toEqual({
			kind: "start-activity",
			activities: ["pick"],
		});
		expect(edgeCriterion(model.edges[3])).toEqual({
			kind: "end-activity",
			activities: ["pack"],
		});
		expect(edgeActionLabel(model.edges[1])).toContain("path");
	});
});

describe("trace helpers", () => {
	it("detects consecutive pairs only", () => {
		expect(hasConsecutivePair(["a", "b", "c"], "a", "b")).toBe(true);
		expect(hasConsecutivePair(["a", "b", "c"], "b", "c")).toBe(true);
		expect(hasConsecutivePair(["a", "b", "c"], "a", "c")).toBe(false);
		expect(hasConsecutivePair([], "a", "b")).toBe(false);
	});
});

describe("formatting", () => {
	it("renders durations in sensible units", () => {
		expect(formatDuration(null)).toBe("-");
		expect(formatDuration(60)).toBe("60 s");
		expect(formatDuration(7200)).toBe("2.00 h");
		expect(formatDuration(172800)).toBe("2.00 d");
	});
});

describe("initial state", () => {
	it("starts on the schema page with the UO metric and open sliders", () => {
		const state = initialState();
		expect(state.page).toBe("schema");
		expect(state.metric).toBe("UO");
		expect(state.minNode).toBe(0);
		expect(state.minEdge).toBe(0);
	});
});
