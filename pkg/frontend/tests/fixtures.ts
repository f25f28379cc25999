import type { ModelDoc } from "../src/types.js";

/** A small two-type model document shaped like the server's output. */
export function sampleModel(): ModelDoc {
	const zero = { events: 0, unique_objects: 0, total_objects: 0 };
	return {
		metric: "UO",
		object_types: ["item", "order"],
		type_colors: { item: "#1f77b4", order: "#d62728" },
		activities: [
			{
				name: "pick",
				metrics: { events: 3, unique_objects: 4, total_objects: 5 },
				per_type: {
					item: { events: 3, unique_objects: 3, total_objects: 3 },
					order: { events: 2, unique_objects: 1, total_objects: 2 },
				},
				value: 4,
			},
			{
				name: "pack",
				metrics: { events: 2, unique_objects: 2, total_objects: 2 },
				per_type: { item: { events: 2, unique_objects: 2, total_objects: 2 } },
				value: 2,
			},
		],
		edges: [
			{
				source: { kind: "start", type: "item" },
				target: { kind: "activity", name: "pick" },
				type: "item",
				metrics: { event_couples: 3, unique_objects: 3, total_objects: 3 },
				value: 3,
			},
			{
				source: { kind: "activity", name: "pick" },
				target: { kind: "activity", name: "pack" },
				type: "item",
				metrics: { event_couples: 2, unique_objects: 2, total_objects: 4 },
				value: 2,
			},
			{
				source: { kind: "activity", name: "pick" },
				target: { kind: "activity", name: "pack" },
				type: "order",
				metrics: { event_couples: 1, unique_objects: 1, total_objects: 1 },
				value: 1,
			},
			{
				source: { kind: "activity", name: "pack" },
				target: { kind: "end", type: "item" },
				type: "item",
				metrics: { event_couples: 2, unique_objects: 2, total_objects: 2 },
				value: 2,
			},
			// a cycle, as rework loops produce in real logs
			{
				source: { kind: "activity", name: "pack" },
				target: { kind: "activity", name: "pick" },
				type: "order",
				metrics: { event_couples: 1, unique_objects: 1, total_objects: 1 },
				value: 1,
			},
		],
		max_node_value: 4,
		max_edge_value: 3,
	};
}

export function emptyModel(): ModelDoc {
	return {
		metric: "UO",
		object_types: ["item"],
		type_colors: { item: "#1f77b4" },
		activities: [],
		edges: [],
		max_node_value: 0,
		max_edge_value: 0,
	};
}
