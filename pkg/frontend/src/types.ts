// Documents exchanged with the engine API (pinned in docs/FORMAT.md).

export type Metric = "E_EC" | "UO" | "TO";

export interface GeneralStats {
	num_events: number;
	num_unique_objects: number;
	num_total_objects: number;
}

export interface ActivityMetricsDoc {
	events: number;
	unique_objects: number;
	total_objects: number;
}

export interface EdgeMetricsDoc {
	event_couples: number;
	unique_objects: number;
	total_objects: number;
}

export interface NodeRef {
	kind: "activity" | "start" | "end";
	name?: string;
	type?: string;
}

export interface ActivityDoc {
	name: string;
	metrics: ActivityMetricsDoc;
	per_type: Record<string, ActivityMetricsDoc>;
	value: number;
}

export interface EdgeDoc {
	source: NodeRef;
	target: NodeRef;
	type: string;
	metrics: EdgeMetricsDoc;
	value: number;
}

export interface ModelDoc {
	metric: Metric;
	object_types: string[];
	type_colors: Record<string, string>;
	activities: ActivityDoc[];
	edges: EdgeDoc[];
	max_node_value: number;
	max_edge_value: number;
}

export interface ChainStep {
	label: string;
	kind: string;
	[key: string]: unknown;
}

export interface ChainSummary {
	chain: { steps: ChainStep[] };
	general: GeneralStats;
}

export interface CriterionDoc {
	kind: string;
	[key: string]: unknown;
}

export interface EventDoc {
	id: string;
	activity: string;
	timestamp: string;
	omap: string[];
	vmap: Record<string, unknown>;
}

export interface EventsPage {
	object?: string;
	events: EventDoc[];
}

export interface ObjectDoc {
	id: string;
	type: string;
	ovmap: Record<string, unknown>;
	lifecycle: string[];
	trace: string[];
	duration_seconds: number | null;
}

export interface ObjectsPage {
	objects: ObjectDoc[];
}

export interface StatsDoc {
	objects_per_type: Record<string, number>;
	events_per_activity: Record<string, number>;
	related_objects_per_event: Array<[number, number]>;
	lifecycle_length_distribution: Array<[number, number]>;
	events_over_time: { start: string | null; end: string | null; counts: number[] };
	dotted_chart: {
		type: string | null;
		points: Array<{ timestamp: string; lane: string; activity: string }>;
	};
}

export interface ReportRowDoc {
	activity: string | null;
	object_type: string | null;
	mean: number;
	stdev: number;
	num_deviations: number;
}

export interface ReportDoc {
	description: string;
	target: "events" | "objects";
	violations: string[];
	rows: ReportRowDoc[];
	skipped_objects: string[];
}

export interface ApplySummary extends ChainSummary {
	report: ReportDoc;
}
