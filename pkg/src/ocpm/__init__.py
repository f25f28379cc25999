"""Object-centric process mining engine.

Ingests OCEL event logs and provides flattening, filtering, discovery of
annotated object-centric directly-follows multigraphs, statistics, and
model-independent conformance checking, as a library, CLI, and HTTP service.
"""

from .core import (
    AttributeValue,
    Event,
    LogStats,
    ObjectInstance,
    OcelLog,
    ValidationIssue,
    events_of_activity,
    general_stats,
    validate,
)
from .flattening import (
    FlatEvent,
    Lifecycle,
    TraditionalLog,
    case_events,
    endpoint_sets,
    flatten,
    lifecycle,
)
from .filtering import (
    ActivitySubset,
    EndActivity,
    FilterChain,
    KeepEvents,
    KeepObjects,
    Path,
    RelatedActivity,
    StartActivity,
    Timeframe,
    TypeSubset,
    apply_criterion,
    restrict_to_events,
    restrict_to_objects,
    select_events,
    select_objects,
)
from .io import FormatKind, OcelParseError, export_xes, parse_ocel, write_ocel
from .discovery import (
    Dfg,
    ModelThresholds,
    OcDfg,
    annotate,
    apply_thresholds,
    discover_dfg,
    discover_ocdfg,
    model_document,
    to_dot,
)
from .stats import StatsBundle, compute_stats
from .conformance import (
    AnomalyConfig,
    ConformanceReport,
    CountRule,
    DurationRule,
    check_count_rule,
    check_duration_rule,
    detect_count_anomalies,
    detect_duration_anomalies,
    violations_to_filter,
)

__version__ = "0.1.0"
