// View state and the pure helpers behind menu actions and labels.

import type {
	ActivityMetricsDoc,
	ChainStep,
	CriterionDoc,
	EdgeDoc,
	EdgeMetricsDoc,
	GeneralStats,
	Metric,
} from "./types.js";

export type Page = "schema" | "events" | "objects" | "statistics" | "conformance";

export const METRICS: Metric[] = ["E_EC", "UO", "TO"];

export interface ViewState {
	sessionId: string | null;
	page: Page;
	metric: Metric;
	minNode: number;
	minEdge: number;
	chain: ChainStep[];
	general: GeneralStats | null;
}

export function initialState(): ViewState {
	return {
		sessionId: null,
		page: "schema",
		metric: "UO",
		minNode: 0,
		minEdge: 0,
		chain: [],
		general: null,
	};
}

export function nodeMetricValue(metrics: ActivityMetricsDoc, metric: Metric): number {
	switch (metric) {
		case "E_EC":
			return metrics.events;
		case "UO":
			return metrics.unique_objects;
		case "TO":
			return metrics.total_objects;
	}
}

export function edgeMetricValue(metrics: EdgeMetricsDoc, metric: Metric): number {
	switch (metric) {
		case "E_EC":
			return metrics.event_couples;
		case "UO":
			return metrics.unique_objects;
		case "TO":
			return metrics.total_objects;
	}
}

export function metricLabel(metric: Metric): string {
	switch (metric) {
		case "E_EC":
			return "E/EC";
		case "UO":
			return "UO";
		case "TO":
			return "TO";
	}
}

// -- criterion builders for the click menus --------------------------------

export function keepActivity(activity: string): CriterionDoc {
	return { kind: "activity-subset", activities: [activity] };
}

export function removeActivity(all: string[], activity: string): CriterionDoc {
	return {
		kind: "activity-subset",
		activities: all.filter((a) => a !== activity).sort(),
	};
}

export function objectsRelatedTo(activity: string): CriterionDoc {
	return { kind: "related-activity", activities: [activity] };
}

export function objectsStartingWith(activity: string): CriterionDoc {
	return { kind: "start-activity", activities: [activity] };
}

export function objectsEndingWith(activity: string): CriterionDoc {
	return { kind: "end-activity", activities: [activity] };
}

/**
 * The filter a clicked edge stands for: a path filter between two
 * activities, or the start/end-activity filter for endpoint edges.
 */
export function edgeCriterion(edge: EdgeDoc): CriterionDoc {
	if (edge.source.kind === "start") {
		return objectsStartingWith(edge.target.name ?? "");
	}
	if (edge.target.kind === "end") {
		return objectsEndingWith(edge.source.name ?? "");
	}
	return { kind: "path", source: edge.source.name, target: edge.target.name };
}

export function edgeActionLabel(edge: EdgeDoc): string {
	if (edge.source.kind === "start") {
		return `keep objects starting with "${edge.target.name}"`;
	}
	if (edge.target.kind === "end") {
		return `keep objects ending with "${edge.source.name}"`;
	}
	return `keep objects with path "${edge.source.name}" -> "${edge.target.name}"`;
}

export function hasConsecutivePair(trace: string[], a: string, b: string): boolean {
	for (let i = 0; i + 1 < trace.length; i++) {
		if (trace[i] === a && trace[i + 1] === b) {
			return true;
		}
	}
	return false;
}

export function formatDuration(seconds: number | null): string {
	if (seconds === null) {
		return "-";
	}
	if (Math.abs(seconds) >= 86400) {
		return `${(seconds / 86400).toFixed(2)} d`;
	}
	if (Math.abs(seconds) >= 3600) {
		return `${(seconds / 3600).toFixed(2)} h`;
	}
	return `${seconds} s`;
}

export function formatNumber(value: number): string {
	return Number.isInteger(value) ? String(value) : value.toFixed(6);
}
