"""Monte Carlo engine for bias experiments over synthetic attribute sets.

An experiment sweeps one axis (attribute cardinality, sample size, attribute
count, or count of added noise attributes), generates `replicates` independent
datasets per sweep point, evaluates the configured measures on each, and
aggregates means and standard deviations into a curve.

Replicate r of every sweep point draws from streams keyed by
(master_seed, r, column path). Points of a sweep therefore share their
replicate randomness: along a sample-size sweep the datasets are nested (row
prefixes), and along count sweeps existing columns keep their draws. Shared
draws leave each point's distribution untouched while removing independent
sampling noise from the *differences* between neighboring points, which is
what makes stabilization visible at a few hundred replicates. Any point can
still be recomputed in isolation from (config, sweep_value, replicate_index)
alone.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from typing import IO, Mapping, Sequence

from .dataset import AttributeBlock, generate_dataset
from .errors import InvalidInputError
from .generators import GeneratorKind, SeededRng
from .measures import msu, symmetrical_uncertainty
from .samplesize import (
    CardinalityProfile,
    heuristic_sample_size,
    min_representative_m,
    multivariate_cardinality,
)

DEFAULT_MASTER_SEED = 20170707
DEFAULT_REPLICATES = 1000


class Rule(enum.Enum):
    """Which attribute families the experiment generates."""

    MK = "mk"
    XOR = "xor"
    BOTH = "both"
    NONE = "none"


_SWEEP_KINDS = ("cardinality", "sample_size", "attribute_count", "noise_attribute_count")


@dataclass(frozen=True)
class Sweep:
    kind: str
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in _SWEEP_KINDS:
            raise InvalidInputError(f"unknown sweep kind {self.kind!r}, expected one of {_SWEEP_KINDS}")
        values = tuple(int(v) for v in self.values)
        if not values:
            raise InvalidInputError("sweep needs at least one value")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class FixedSampleSize:
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidInputError(f"fixed sample size must be at least 1, got {self.m}")


@dataclass(frozen=True)
class ComputedSampleSize:
    """Sample size = ceil(factor x joint value space of the evaluated subset)."""

    factor: float = 10.0

    def __post_init__(self) -> None:
        if self.factor <= 0:
            raise InvalidInputError(f"factor must be positive, got {self.factor}")


SampleSizePolicy = FixedSampleSize | ComputedSampleSize


@dataclass(frozen=True)
class CountRule:
    """How a group's column count follows the sweep.

    Outside `window` the count is 0 (the group is absent at that point).
    Inside it, the count is `fixed` when given, 2*log2(sweep value) when
    `binary_equivalent` (the binary subset matching a pair of wide attributes
    in joint-space size), and sweep value + offset otherwise.
    """

    fixed: int | None = None
    offset: int = 0
    window: tuple[int, int] | None = None
    binary_equivalent: bool = False

    def resolve(self, sweep_value: int) -> int:
        if self.window is not None and not self.window[0] <= sweep_value <= self.window[1]:
            return 0
        if self.fixed is not None:
            return self.fixed
        if self.binary_equivalent:
            n = 2 * math.log2(sweep_value)
            if not n.is_integer():
                raise InvalidInputError(
                    f"sweep value {sweep_value} has no binary-equivalent attribute count"
                )
            return int(n)
        count = sweep_value + self.offset
        return max(count, 0)


@dataclass(frozen=True)
class GroupSpec:
    """One named family of attribute columns within the generated dataset."""

    name: str
    family: GeneratorKind
    count: int | CountRule
    cardinality: int | str  # int, or "sweep" to follow a cardinality sweep

    def resolve_count(self, sweep_value: int) -> int:
        if isinstance(self.count, CountRule):
            return self.count.resolve(sweep_value)
        return int(self.count)

    def resolve_card(self, sweep_value: int) -> int:
        if self.cardinality == "sweep":
            return int(sweep_value)
        return int(self.cardinality)


@dataclass(frozen=True)
class TrackedSubset:
    """A set of groups evaluated together (always jointly with the class)."""

    label: str
    groups: tuple[str, ...]
    with_su: bool = False
    window: tuple[int, int] | None = None

    def active(self, sweep_value: int) -> bool:
        return self.window is None or self.window[0] <= sweep_value <= self.window[1]


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: generation rule, sweep axis, sizes, seeding.

    `n_informative`, `attribute_card` and `n_noninformative` may each be an int
    or an inclusive (lo, hi) range; a range marks the field driven by the sweep
    axis. Explicit `groups`/`tracked` override the rule-based defaults for
    layouts the scalar fields cannot express.
    """

    name: str
    rule: Rule
    sweep: Sweep
    n_informative: int | tuple[int, int] = 0
    attribute_card: int | tuple[int, int] = 2
    n_noninformative: int | tuple[int, int] = 0
    class_card: int = 2
    sample_size_policy: SampleSizePolicy | None = None
    replicates: int = DEFAULT_REPLICATES
    master_seed: int = DEFAULT_MASTER_SEED
    kononenko_k: float = 1.0
    xor_noise: float = 0.05
    groups: tuple[GroupSpec, ...] | None = None
    tracked: tuple[TrackedSubset, ...] | None = None
    theta_ref: float | None = None
    representativeness_scan: bool = False
    scan_alpha: float = 0.05

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise InvalidInputError("replicates must be at least 1")
        if self.class_card < 2:
            raise InvalidInputError("class cardinality must be at least 2")
        if self.sweep.kind == "sample_size":
            if self.sample_size_policy is not None:
                raise InvalidInputError("a sample-size sweep fixes m per point; drop the policy")
        elif self.sample_size_policy is None and not self.representativeness_scan:
            raise InvalidInputError("experiments without a sample-size sweep need a policy")
        if self.groups is None:
            swept = [
                kind
                for kind, val in (
                    ("cardinality", self.attribute_card),
                    ("attribute_count", self.n_informative),
                    ("attribute_count", self.n_noninformative),
                )
                if isinstance(val, tuple)
            ]
            if self.sweep.kind == "cardinality" and "cardinality" not in swept:
                raise InvalidInputError("cardinality sweep needs attribute_card as a (lo, hi) range")
            if self.sweep.kind in ("attribute_count", "noise_attribute_count") and not any(
                isinstance(v, tuple) for v in (self.n_informative, self.n_noninformative)
            ):
                raise InvalidInputError("count sweep needs a count field as a (lo, hi) range")


def _as_count_rule(value: int | tuple[int, int]) -> int | CountRule:
    if isinstance(value, tuple):
        return CountRule(window=(int(value[0]), int(value[1])))
    return int(value)


def _default_groups(config: ExperimentConfig) -> tuple[GroupSpec, ...]:
    card: int | str = "sweep" if isinstance(config.attribute_card, tuple) else int(config.attribute_card)
    n_inf = config.n_informative
    n_non = config.n_noninformative
    groups: list[GroupSpec] = []
    if config.rule in (Rule.XOR, Rule.BOTH):
        groups.append(GroupSpec("xor", GeneratorKind.XOR_PAIR, 2, 2))
    if config.rule is Rule.MK:
        groups.append(GroupSpec("mk", GeneratorKind.KONONENKO, _as_count_rule(n_inf), card))
    elif config.rule is Rule.BOTH:
        # counts of informative attributes include the XOR pair itself
        if isinstance(n_inf, tuple):
            mk_count: int | CountRule = CountRule(offset=-2, window=(int(n_inf[0]), int(n_inf[1])))
        else:
            mk_count = max(int(n_inf) - 2, 0)
        groups.append(GroupSpec("mk", GeneratorKind.KONONENKO, mk_count, card))
    groups.append(GroupSpec("u", GeneratorKind.UNIFORM, _as_count_rule(n_non), card))
    return tuple(groups)


def _default_tracked(config: ExperimentConfig, groups: tuple[GroupSpec, ...]) -> tuple[TrackedSubset, ...]:
    names = tuple(g.name for g in groups)
    if config.rule is Rule.MK and "mk" in names and "u" in names:
        return (
            TrackedSubset("informative", ("mk",)),
            TrackedSubset("noninformative", ("u",)),
        )
    return (TrackedSubset("set", names),)


@dataclass(frozen=True)
class ResolvedPoint:
    """Concrete layout of one sweep point."""

    sweep_value: int
    m: int
    blocks: tuple[AttributeBlock | None, ...]
    tracked: tuple[tuple[str, tuple[str, ...], bool], ...]  # (label, column names, with_su)
    sample_size: int


def resolve_point(config: ExperimentConfig, sweep_value: int) -> ResolvedPoint:
    """Turn a sweep value into blocks, tracked column sets and a sample size."""
    sweep_value = int(sweep_value)
    groups = config.groups if config.groups is not None else _default_groups(config)
    tracked = config.tracked if config.tracked is not None else _default_tracked(config, groups)

    blocks: list[AttributeBlock | None] = []
    group_columns: dict[str, tuple[str, ...]] = {}
    group_cards: dict[str, int] = {}
    for g in groups:
        count = g.resolve_count(sweep_value)
        card = g.resolve_card(sweep_value)
        if g.family is GeneratorKind.XOR_PAIR and count not in (0, 2):
            raise InvalidInputError("an XOR pair group must have count 2")
        if count == 0:
            blocks.append(None)
            group_columns[g.name] = ()
            continue
        names = tuple(f"{g.name}{i}" for i in range(1, count + 1))
        blocks.append(AttributeBlock(names=names, kind=g.family, cardinality=card))
        group_columns[g.name] = names
        group_cards[g.name] = card

    active: list[tuple[str, tuple[str, ...], bool]] = []
    for sub in tracked:
        if not sub.active(sweep_value):
            continue
        cols = tuple(n for gname in sub.groups for n in group_columns.get(gname, ()))
        if cols:
            active.append((sub.label, cols, sub.with_su))
    if not active and not config.representativeness_scan:
        raise InvalidInputError(f"no tracked subset is active at sweep value {sweep_value}")

    m = _resolve_sample_size(config, sweep_value, active, group_cards, group_columns)
    return ResolvedPoint(
        sweep_value=sweep_value,
        m=m,
        blocks=tuple(blocks),
        tracked=tuple(active),
        sample_size=m,
    )


def _resolve_sample_size(
    config: ExperimentConfig,
    sweep_value: int,
    active: Sequence[tuple[str, tuple[str, ...], bool]],
    group_cards: Mapping[str, int],
    group_columns: Mapping[str, tuple[str, ...]],
) -> int:
    if config.sweep.kind == "sample_size":
        if sweep_value < 1:
            raise InvalidInputError(f"sample size {sweep_value} is infeasible")
        return sweep_value
    policy = config.sample_size_policy
    if isinstance(policy, FixedSampleSize):
        return policy.m
    if isinstance(policy, ComputedSampleSize):
        # Heuristic over the evaluated subset (class included); when several
        # subsets are tracked at a point they share one dataset, so the
        # largest requirement wins. Presets keep those requirements equal.
        card_by_column = {
            name: group_cards[gname]
            for gname, names in group_columns.items()
            if names
            for name in names
        }
        sizes = [
            heuristic_sample_size(
                CardinalityProfile(
                    attribute_cards=tuple(card_by_column[c] for c in cols),
                    class_card=config.class_card,
                ),
                policy.factor,
            )
            for _, cols, _ in active
        ]
        if not sizes:
            raise InvalidInputError("computed sample size needs at least one tracked subset")
        return max(sizes)
    raise InvalidInputError("experiment has no way to determine the sample size")


def run_replicate(
    config: ExperimentConfig, sweep_value: int, replicate_index: int
) -> dict[str, float]:
    """Generate one dataset for a sweep point and evaluate its measures."""
    point = resolve_point(config, sweep_value)
    return _run_resolved(config, point, replicate_index)


def _run_resolved(
    config: ExperimentConfig, point: ResolvedPoint, replicate_index: int
) -> dict[str, float]:
    rng = SeededRng(config.master_seed, replicate_index)
    sample = generate_dataset(
        point.m,
        config.class_card,
        point.blocks,
        rng,
        k=config.kononenko_k,
        xor_noise=config.xor_noise,
    )
    class_idx = sample.n_columns - 1
    values: dict[str, float] = {}
    for label, col_names, with_su in point.tracked:
        cols = [sample.column_index(n) for n in col_names]
        values[f"msu_{label}"] = msu(sample, cols + [class_idx]).value
        if with_su:
            for name, idx in zip(col_names, cols):
                values[f"su_{name}"] = symmetrical_uncertainty(sample, idx, class_idx).value
    return values


@dataclass(frozen=True)
class MeasureStats:
    mean: float
    std: float
    n: int


@dataclass
class BiasCurve:
    """Aggregated sweep output: per-point statistics for each measure."""

    name: str
    sweep_kind: str
    sweep_values: tuple[int, ...]
    sample_sizes: tuple[int | None, ...]
    measures: dict[str, list[MeasureStats | None]]
    theta_ref: float | None = None
    errors: tuple[tuple[int, str], ...] = ()

    def mean_series(self, measure: str) -> list[float | None]:
        stats = self._series(measure)
        return [s.mean if s is not None else None for s in stats]

    def _series(self, measure: str) -> list[MeasureStats | None]:
        try:
            return self.measures[measure]
        except KeyError:
            raise InvalidInputError(
                f"unknown measure {measure!r}; curve has {sorted(self.measures)}"
            ) from None

    def write_csv(self, out: IO[str]) -> None:
        out.write("sweep_value,measure_name,mean,stddev,n_replicates,sample_size_used\n")
        for i, v in enumerate(self.sweep_values):
            size = self.sample_sizes[i]
            size_text = "" if size is None else str(size)
            for measure in self.measures:
                s = self.measures[measure][i]
                if s is None:
                    continue
                out.write(f"{v},{measure},{s.mean!r},{s.std!r},{s.n},{size_text}\n")


def _mean_std(values: Sequence[float]) -> tuple[float, float]:
    # fsum aggregation: replicate order cannot change the result
    n = len(values)
    mean = math.fsum(values) / n
    if n < 2:
        return mean, 0.0
    var = math.fsum((x - mean) ** 2 for x in values) / (n - 1)
    return mean, math.sqrt(var)


def run_experiment(config: ExperimentConfig) -> BiasCurve:
    """Run every sweep point for `config.replicates` replicates and aggregate.

    Infeasible points are recorded in `errors` and skipped; the sweep itself
    never aborts.
    """
    if config.representativeness_scan:
        return _run_representativeness_scan(config)

    sample_sizes: list[int | None] = []
    per_measure: dict[str, list[MeasureStats | None]] = {}
    errors: list[tuple[int, str]] = []
    n_points = len(config.sweep.values)

    for i, sweep_value in enumerate(config.sweep.values):
        try:
            point = resolve_point(config, sweep_value)
            collected: dict[str, list[float]] = {}
            for r in range(config.replicates):
                for label, value in _run_resolved(config, point, r).items():
                    collected.setdefault(label, []).append(value)
        except InvalidInputError as exc:
            errors.append((sweep_value, str(exc)))
            sample_sizes.append(None)
            continue
        sample_sizes.append(point.sample_size)
        for label, values in collected.items():
            series = per_measure.setdefault(label, [None] * n_points)
            mean, std = _mean_std(values)
            series[i] = MeasureStats(mean=mean, std=std, n=len(values))

    return BiasCurve(
        name=config.name,
        sweep_kind=config.sweep.kind,
        sweep_values=config.sweep.values,
        sample_sizes=tuple(sample_sizes),
        measures=per_measure,
        theta_ref=config.theta_ref,
        errors=tuple(errors),
    )


def _run_representativeness_scan(config: ExperimentConfig) -> BiasCurve:
    """Deterministic variant: per point, report chi-squared m* and the heuristic m."""
    factor = (
        config.sample_size_policy.factor
        if isinstance(config.sample_size_policy, ComputedSampleSize)
        else 10.0
    )
    m_star: list[MeasureStats | None] = []
    heuristic: list[MeasureStats | None] = []
    cells: list[MeasureStats | None] = []
    errors: list[tuple[int, str]] = []
    for sweep_value in config.sweep.values:
        try:
            groups = config.groups if config.groups is not None else _default_groups(config)
            cards: list[int] = []
            for g in groups:
                count = g.resolve_count(sweep_value)
                cards.extend([g.resolve_card(sweep_value)] * count)
            profile = CardinalityProfile(tuple(cards), config.class_card)
            k_cells = multivariate_cardinality(profile)
            star = min_representative_m(k_cells, config.scan_alpha)
            heur = heuristic_sample_size(profile, factor)
        except InvalidInputError as exc:
            errors.append((sweep_value, str(exc)))
            for series in (m_star, heuristic, cells):
                series.append(None)
            continue
        cells.append(MeasureStats(float(k_cells), 0.0, 1))
        m_star.append(MeasureStats(float(star), 0.0, 1))
        heuristic.append(MeasureStats(float(heur), 0.0, 1))
    return BiasCurve(
        name=config.name,
        sweep_kind=config.sweep.kind,
        sweep_values=config.sweep.values,
        sample_sizes=tuple([None] * len(config.sweep.values)),
        measures={"cells": cells, "m_star": m_star, "heuristic_m": heuristic},
        errors=tuple(errors),
    )


def bias(curve: BiasCurve, theta: float, measure: str | None = None) -> list[float | None]:
    """Per-point bias mean - theta for one measure of a curve."""
    if not math.isfinite(theta):
        raise InvalidInputError(f"theta must be finite, got {theta}")
    if measure is None:
        if len(curve.measures) != 1:
            raise InvalidInputError(
                f"curve has several measures {sorted(curve.measures)}; name one"
            )
        measure = next(iter(curve.measures))
    means = curve.mean_series(measure)
    return [m - theta if m is not None else None for m in means]


def config_from_json(text_or_mapping: str | Mapping) -> ExperimentConfig:
    """Build a config from its JSON form (see README for the schema)."""
    data = json.loads(text_or_mapping) if isinstance(text_or_mapping, str) else dict(text_or_mapping)
    try:
        sweep_data = data["sweep"]
        if "values" in sweep_data:
            values = tuple(int(v) for v in sweep_data["values"])
        else:
            values = tuple(range(int(sweep_data["start"]), int(sweep_data["stop"]) + 1))
        sweep = Sweep(kind=sweep_data["kind"], values=values)
        policy_data = data.get("sample_size_policy")
        policy: SampleSizePolicy | None
        if policy_data is None:
            policy = None
        elif "fixed" in policy_data:
            policy = FixedSampleSize(int(policy_data["fixed"]))
        elif "computed" in policy_data:
            policy = ComputedSampleSize(float(policy_data["computed"]))
        else:
            raise InvalidInputError(f"unknown sample size policy {policy_data!r}")

        def int_or_range(value):
            if isinstance(value, (list, tuple)):
                lo, hi = value
                return (int(lo), int(hi))
            return int(value)

        return ExperimentConfig(
            name=str(data["name"]),
            rule=Rule(data["rule"]),
            sweep=sweep,
            n_informative=int_or_range(data.get("n_informative", 0)),
            attribute_card=int_or_range(data.get("attribute_card", 2)),
            n_noninformative=int_or_range(data.get("n_noninformative", 0)),
            class_card=int(data.get("class_card", 2)),
            sample_size_policy=policy,
            replicates=int(data.get("replicates", DEFAULT_REPLICATES)),
            master_seed=int(data.get("master_seed", DEFAULT_MASTER_SEED)),
            kononenko_k=float(data.get("kononenko_k", 1.0)),
            xor_noise=float(data.get("xor_noise", 0.05)),
            theta_ref=(None if data.get("theta_ref") is None else float(data["theta_ref"])),
        )
    except KeyError as exc:
        raise InvalidInputError(f"experiment config is missing field {exc}") from None
    except ValueError as exc:
        raise InvalidInputError(f"bad experiment config: {exc}") from None


def with_overrides(
    config: ExperimentConfig,
    replicates: int | None = None,
    master_seed: int | None = None,
) -> ExperimentConfig:
    """Copy of a config with run-scale knobs replaced."""
    updates = {}
    if replicates is not None:
        updates["replicates"] = replicates
    if master_seed is not None:
        updates["master_seed"] = master_seed
    return replace(config, **updates) if updates else config
