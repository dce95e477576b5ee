"""Command-line front end: classify maps, predict chaos profiles, build the
block constructions, and verify the finite-horizon evidence end to end.

Exit codes: 0 all requested checks passed, 1 some check failed, 2 the
configuration was unusable.  Artifacts (JSON reports, CSV statistics) land in
the --out directory; CSV bodies are byte-stable for identical configurations.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .indexspace import (
    SelfMap,
    enumerate_index,
    map_spec,
    parse_map_spec,
    rank_of,
)
from .orbits import (
    chain_decomposition,
    classify_point,
    map_profile,
)
from .configspace import (
    Alphabet,
    pattern_json,
    window_from_ranks,
)
from .constructions import (
    PreconditionError,
    ScrambledFamilySpec,
    almost_disjoint_family,
    block_lengths,
    dc_family,
    densify_family,
    full_shift_transitive_point,
    pattern_enumeration,
    transitive_weave_family,
)
from .stats import (
    DcPairParams,
    Schedule,
    block_boundary_schedule,
    dc_pair_report,
    density_profile,
    proof_bound_check_dc,
)
from .theorems import counterexample_suite, predict

__all__ = ["ConfigError", "ExperimentConfig", "main"]

STATS_COLUMNS = (
    "pair_id",
    "window_id",
    "n",
    "count",
    "fraction_num",
    "fraction_den",
    "running_min",
    "running_max",
)


class ConfigError(ValueError):
    """Configuration file failed validation; message names the offending field."""


@dataclass
class ExperimentConfig:
    map: SelfMap
    alphabet: Alphabet
    family_size: int = 3
    lengths_variant: str = "plain"
    lengths_count: int = 8
    windows: tuple[tuple[int, ...], ...] = ((1,), (1, 2))
    schedule_kind: str = "block_boundaries"
    schedule_r_max: int = 8
    schedule_horizons: tuple[int, ...] = ()
    eps_low: Fraction = Fraction(1, 4)
    eps_high: Fraction = Fraction(1, 4)
    anchor_rank: int = 1
    seed: int = 0

    def to_json(self) -> dict:
        out = {
            "schema": "gshift-config/1",
            "map": map_spec(self.map),
            "alphabet": {
                "symbols": list(self.alphabet.symbols),
                "p": self.alphabet.p,
                "q": self.alphabet.q,
            },
            "family_size": self.family_size,
            "lengths": {"variant": self.lengths_variant, "count": self.lengths_count},
            "windows": [list(w) for w in self.windows],
            "eps_low": str(self.eps_low),
            "eps_high": str(self.eps_high),
            "anchor_rank": self.anchor_rank,
            "seed": self.seed,
        }
        if self.schedule_kind == "block_boundaries":
            out["schedule"] = {"kind": "block_boundaries", "r_max": self.schedule_r_max}
        else:
            out["schedule"] = {"kind": "explicit", "horizons": list(self.schedule_horizons)}
        return out


def _expect(obj: dict, key: str, types, path: str, default=None, required=False):
    if key not in obj:
        if required:
            raise ConfigError(f"{path}.{key}: required field missing")
        return default
    value = obj[key]
    if types is not None and not isinstance(value, types):
        raise ConfigError(f"{path}.{key}: expected {types}, got {type(value).__name__}")
    return value


def parse_config(obj: dict) -> ExperimentConfig:
    if not isinstance(obj, dict):
        raise ConfigError("config: top level must be an object")
    try:
        m = parse_map_spec(_expect(obj, "map", dict, "config", required=True))
    except ValueError as exc:
        raise ConfigError(f"config.map: {exc}") from exc
    alpha_obj = _expect(obj, "alphabet", dict, "config",
                        default={"symbols": ["p", "q"], "p": "p", "q": "q"})
    try:
        alphabet = Alphabet(tuple(alpha_obj["symbols"]), alpha_obj["p"], alpha_obj["q"])
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"config.alphabet: {exc}") from exc
    family_size = _expect(obj, "family_size", int, "config", default=3)
    if family_size < 2:
        raise ConfigError("config.family_size: need at least two members")
    lengths_obj = _expect(obj, "lengths", dict, "config",
                          default={"variant": "plain", "count": 8})
    variant = lengths_obj.get("variant", "plain")
    if variant not in ("plain", "weave"):
        raise ConfigError(f"config.lengths.variant: unknown variant {variant!r}")
    count = lengths_obj.get("count", 8)
    if not isinstance(count, int) or count < 1:
        raise ConfigError("config.lengths.count: need a positive integer")
    windows_obj = _expect(obj, "windows", list, "config", default=[[1], [1, 2]])
    windows = []
    for wi, w in enumerate(windows_obj):
        if not isinstance(w, list) or not w or not all(isinstance(r, int) and r >= 1 for r in w):
            raise ConfigError(f"config.windows[{wi}]: need a nonempty list of ranks >= 1")
        windows.append(tuple(w))
    sched_obj = _expect(obj, "schedule", dict, "config",
                        default={"kind": "block_boundaries", "r_max": 8})
    kind = sched_obj.get("kind", "block_boundaries")
    r_max, horizons = 8, ()
    if kind == "block_boundaries":
        r_max = sched_obj.get("r_max", 8)
        if not isinstance(r_max, int) or r_max < 1:
            raise ConfigError("config.schedule.r_max: need a positive integer")
    elif kind == "explicit":
        horizons = tuple(sched_obj.get("horizons", ()))
        if not horizons or any(not isinstance(h, int) or h < 1 for h in horizons):
            raise ConfigError("config.schedule.horizons: need positive integers")
    else:
        raise ConfigError(f"config.schedule.kind: unknown kind {kind!r}")
    try:
        eps_low = Fraction(_expect(obj, "eps_low", str, "config", default="1/4"))
        eps_high = Fraction(_expect(obj, "eps_high", str, "config", default="1/4"))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"config.eps_low/eps_high: {exc}") from exc
    anchor_rank = _expect(obj, "anchor_rank", int, "config", default=1)
    if anchor_rank < 1:
        raise ConfigError("config.anchor_rank: need a rank >= 1")
    seed = _expect(obj, "seed", int, "config", default=0)
    return ExperimentConfig(
        map=m,
        alphabet=alphabet,
        family_size=family_size,
        lengths_variant=variant,
        lengths_count=count,
        windows=tuple(windows),
        schedule_kind=kind,
        schedule_r_max=r_max,
        schedule_horizons=horizons,
        eps_low=eps_low,
        eps_high=eps_high,
        anchor_rank=anchor_rank,
        seed=seed,
    )


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON in {path}: {exc}") from exc
    return parse_config(obj)


# ---------------------------------------------------------------------------
# Shared pipeline pieces.
# ---------------------------------------------------------------------------


def _schedule_for(cfg: ExperimentConfig, lengths, horizon_cap: Optional[int]) -> Schedule:
    if cfg.schedule_kind == "block_boundaries":
        sched = block_boundary_schedule(lengths, cfg.schedule_r_max)
    else:
        sched = Schedule(cfg.schedule_horizons)
    if horizon_cap is not None:
        kept = tuple(h for h in sched.horizons if h <= horizon_cap)
        if not kept:
            raise ConfigError(f"--horizon-cap {horizon_cap} removes every checkpoint")
        labels = tuple(sched.labels[: len(kept)]) if sched.labels else None
        sched = Schedule(kept, labels)
    return sched


def _pick_anchor(cfg: ExperimentConfig, budget: int):
    anchor = enumerate_index(cfg.map.domain, cfg.anchor_rank)
    cls = classify_point(cfg.map, anchor, budget)
    if cls.is_non_quasi_periodic:
        return anchor, cls
    for rank in range(1, 65):
        candidate = enumerate_index(cfg.map.domain, rank)
        cls = classify_point(cfg.map, candidate, budget)
        if cls.is_non_quasi_periodic:
            return candidate, cls
    return None, cls


def _family_for(cfg: ExperimentConfig, anchor) -> tuple[ScrambledFamilySpec, list]:
    lengths = block_lengths(cfg.lengths_count, cfg.lengths_variant)
    fam = almost_disjoint_family(cfg.family_size)
    spec = ScrambledFamilySpec(cfg.map, (anchor,), cfg.alphabet, lengths, fam,
                               cfg.lengths_variant)
    if cfg.lengths_variant == "plain":
        members = dc_family(spec)
    else:
        source = full_shift_transitive_point(cfg.alphabet)
        members = transitive_weave_family(spec, source)
    return spec, members


def _stats_rows(cfg: ExperimentConfig, spec, members, schedule: Schedule) -> list[dict]:
    rows = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            pair_id = f"{i + 1}-{j + 1}"
            for wi, ranks in enumerate(cfg.windows):
                window = window_from_ranks(cfg.map.domain, ranks)
                profile = density_profile(cfg.map, members[i], members[j], window, schedule)
                for row in profile.rows:
                    rows.append({
                        "pair_id": pair_id,
                        "window_id": f"w{wi + 1}",
                        "n": row.horizon,
                        "count": row.count,
                        "fraction_num": row.fraction.numerator,
                        "fraction_den": row.fraction.denominator,
                        "running_min": str(row.running_min),
                        "running_max": str(row.running_max),
                    })
    return rows


def _write_csv(path: Path, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=STATS_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def _write_json(path: Path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _member_manifest(cfg: ExperimentConfig, members, spec) -> dict:
    return {
        "schema": "gshift-family/1",
        "map": map_spec(cfg.map),
        "variant": cfg.lengths_variant,
        "anchor_ranks": [rank_of(cfg.map.domain, a) for a in spec.anchors],
        "alphabet": {"symbols": list(cfg.alphabet.symbols),
                     "p": cfg.alphabet.p, "q": cfg.alphabet.q},
        "lengths": list(spec.lengths.values()),
        "members": [
            {
                "member": i + 1,
                "block_set": m.members.describe(),
                "leading_blocks": [
                    m.alphabet.p if m.members.contains(r) else m.alphabet.q
                    for r in range(1, 9)
                ],
            }
            for i, m in enumerate(members)
        ],
    }


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def _cmd_classify(cfg: ExperimentConfig, out: Path, args) -> int:
    profile = map_profile(cfg.map, args.budget)
    report = {
        "schema": "gshift-classify/1",
        "map": map_spec(cfg.map),
        "profile": profile.to_json(),
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    _write_json(out / "classify.json", report)
    return 0


def _cmd_predict(cfg: ExperimentConfig, out: Path, args) -> int:
    profile = map_profile(cfg.map, args.budget)
    prediction = predict(profile)
    report = {
        "schema": "gshift-predict/1",
        "map": map_spec(cfg.map),
        "profile": profile.to_json(),
        "prediction": prediction.to_json(),
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    _write_json(out / "predict.json", report)
    return 0


def _cmd_construct(cfg: ExperimentConfig, out: Path, args, flavor: str) -> int:
    anchor, cls = _pick_anchor(cfg, args.budget)
    if anchor is None:
        print(f"error: no usable anchor: classification came back {cls.kind}",
              file=sys.stderr)
        return 1
    if flavor == "transitive" and cfg.lengths_variant != "weave":
        cfg.lengths_variant = "weave"
    if flavor in ("dc", "dense") and cfg.lengths_variant != "plain":
        cfg.lengths_variant = "plain"
    try:
        spec, members = _family_for(cfg, anchor)
        if flavor == "dense":
            enum = pattern_enumeration(cfg.alphabet, cfg.map.domain)
            dense = densify_family(cfg.map, members, enum, len(members))
            manifest = _member_manifest(cfg, members, spec)
            manifest["patches"] = [
                {
                    "member": i + 1,
                    "pattern": pattern_json(cfg.map.domain, enum.pattern(i + 1)),
                }
                for i in range(len(dense))
            ]
        else:
            manifest = _member_manifest(cfg, members, spec)
            if flavor == "transitive":
                reps = chain_decomposition(cfg.map, 8, args.budget)
                manifest["chain_representatives"] = [repr(r) for r in reps.representatives]
    except (PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(manifest, indent=2, sort_keys=True))
    _write_json(out / f"family-{flavor}.json", manifest)
    return 0


def _cmd_stats(cfg: ExperimentConfig, out: Path, args) -> int:
    anchor, cls = _pick_anchor(cfg, args.budget)
    if anchor is None:
        print(f"error: no usable anchor: classification came back {cls.kind}",
              file=sys.stderr)
        return 1
    try:
        spec, members = _family_for(cfg, anchor)
        schedule = _schedule_for(cfg, spec.lengths, args.horizon_cap)
    except ConfigError:
        raise
    except (PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rows = _stats_rows(cfg, spec, members, schedule)
    _write_csv(out / "stats.csv", rows)
    print(f"wrote {len(rows)} rows to {out / 'stats.csv'}")
    return 0


def _cmd_verify(cfg: ExperimentConfig, out: Path, args) -> int:
    checks: list[tuple[str, bool, str]] = []
    profile = map_profile(cfg.map, args.budget)
    prediction = predict(profile)
    report: dict = {
        "schema": "gshift-verify/1",
        "map": map_spec(cfg.map),
        "profile": profile.to_json(),
        "prediction": prediction.to_json(),
        "checks": [],
    }
    skipped_construction = False
    if not prediction.distributional.is_true:
        skipped_construction = True
        report["construction"] = {
            "skipped": f"distributional verdict is {prediction.distributional.truth}"
        }
    else:
        anchor, cls = _pick_anchor(cfg, args.budget)
        if anchor is None:
            checks.append(("anchor", False, f"no proven infinite-orbit anchor ({cls.kind})"))
        else:
            try:
                spec, members = _family_for(cfg, anchor)
                schedule = _schedule_for(cfg, spec.lengths, args.horizon_cap)
                rows = _stats_rows(cfg, spec, members, schedule)
                _write_csv(out / "stats.csv", rows)
                r_cap = cfg.schedule_r_max if cfg.schedule_kind == "block_boundaries" else 8
                bound_results = []
                for i in range(len(members)):
                    for j in range(i + 1, len(members)):
                        params = DcPairParams(
                            cfg.map, anchor, spec.lengths, members[i], members[j],
                            spec.family.members[i], spec.family.members[j],
                        )
                        for r in range(2, r_cap + 1):
                            if args.horizon_cap is not None \
                                    and spec.lengths.horizon(r) > args.horizon_cap:
                                continue
                            in_i = spec.family.members[i].contains(r)
                            in_j = spec.family.members[j].contains(r)
                            if not in_i and not in_j:
                                continue
                            offsets = (0,) if not (in_i and in_j) else (0, 1)
                            ok = proof_bound_check_dc(params, r, offsets)
                            bound_results.append(
                                {"pair": f"{i + 1}-{j + 1}", "r": r, "ok": ok}
                            )
                bounds_ok = all(b["ok"] for b in bound_results)
                checks.append(("proof-bounds", bounds_ok,
                               f"{sum(b['ok'] for b in bound_results)}/{len(bound_results)}"))
                surrogate_ok = True
                for i in range(len(members)):
                    for j in range(i + 1, len(members)):
                        windows = [window_from_ranks(cfg.map.domain, w) for w in cfg.windows]
                        verdict = dc_pair_report(cfg.map, members[i], members[j],
                                                 windows, schedule, cfg.eps_low, cfg.eps_high)
                        if not (verdict.dc1_surrogate and verdict.dc2_surrogate):
                            surrogate_ok = False
                checks.append(("dc-surrogate", surrogate_ok, "all pairs"))
                report["bounds"] = bound_results
            except ConfigError:
                raise
            except (PreconditionError, ValueError) as exc:
                checks.append(("construction", False, str(exc)))
    for name, ok, note in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {note}")
    if skipped_construction:
        print("SKIP construction: map is not predicted distributionally chaotic")
    report["checks"] = [{"name": n, "ok": ok, "note": note} for n, ok, note in checks]
    rollup = all(ok for _, ok, _ in checks)
    report["rollup"] = rollup
    _write_json(out / "verify.json", report)
    print(f"rollup: {'PASS' if rollup else 'FAIL'}")
    return 0 if rollup else 1


def _cmd_counterexamples(cfg_unused, out: Path, args) -> int:
    entries = counterexample_suite()
    rows = []
    names = ("li_yorke", "distributional", "omega", "dense", "transitive")
    for e in entries:
        rows.append({
            "map": e.name,
            "expected": "/".join(t.removeprefix("proven_") for t in e.expected),
            "computed": "/".join(t.removeprefix("proven_") for t in e.computed.truths()),
            "pass": str(e.passed).lower(),
        })
    with open(out / "counterexamples.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=("map", "expected", "computed", "pass"),
                                lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    width = max(len(r["map"]) for r in rows)
    header = f"{'map'.ljust(width)}  {'/'.join(names)}  pass"
    print(header)
    for r in rows:
        print(f"{r['map'].ljust(width)}  {r['computed']}  {r['pass']}")
    passed = sum(e.passed for e in entries)
    print(f"{passed}/{len(entries)} suite entries match")
    return 0 if passed == len(entries) else 1


# ---------------------------------------------------------------------------
# Entry point.
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gshift",
        description="generalized shift systems: classification, construction, verification",
    )
    parser.add_argument("--config", help="path to a JSON experiment configuration")
    parser.add_argument("--out", default="gshift-out", help="artifact directory")
    parser.add_argument("--horizon-cap", type=int, default=None,
                        help="drop schedule checkpoints above this horizon")
    parser.add_argument("--budget", type=int,
                        default=int(os.environ.get("GSHIFT_BUDGET", "4096")),
                        help="step budget for bounded searches (env GSHIFT_BUDGET)")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument(
        "command",
        choices=(
            "classify",
            "predict",
            "construct-dc",
            "construct-dense",
            "construct-transitive",
            "stats",
            "verify",
            "counterexamples",
        ),
    )
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "counterexamples":
            cfg = None
        elif args.config is None:
            raise ConfigError("config: --config is required for this command")
        else:
            cfg = load_config(args.config)
            if args.seed is not None:
                cfg.seed = args.seed
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "classify":
            return _cmd_classify(cfg, out, args)
        if args.command == "predict":
            return _cmd_predict(cfg, out, args)
        if args.command == "construct-dc":
            return _cmd_construct(cfg, out, args, "dc")
        if args.command == "construct-dense":
            return _cmd_construct(cfg, out, args, "dense")
        if args.command == "construct-transitive":
            return _cmd_construct(cfg, out, args, "transitive")
        if args.command == "stats":
            return _cmd_stats(cfg, out, args)
        if args.command == "verify":
            return _cmd_verify(cfg, out, args)
        return _cmd_counterexamples(cfg, out, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
