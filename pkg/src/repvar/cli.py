"""Command-line front door.

Verbs: ``variety`` (solve a braid closure's trace-free variety),
``invariants`` (exact Alexander / determinant / component prediction),
``verify`` (run a named check suite with pass/fail scorecard), ``hessian``
and ``chern`` (emit those modules' reports).  Every invocation persists a
schema-versioned JSON record to the run directory; ``verify``, ``hessian``
and ``chern`` exit nonzero iff a check fails.  Flags mirror to environment
variables with the REPVAR_ prefix (command-qualified, e.g.
REPVAR_VARIETY_SEEDS); explicit flags win.
"""

from __future__ import annotations

import dataclasses
import json
import math
from datetime import datetime, timezone
from pathlib import Path

import click
import numpy as np

from . import __version__, chern as chern_mod, hessian as hessian_mod
from .braid import BraidWord, closure_components, knot_by_name, parse_braid
from .invariants import (
    alexander,
    compare_khovanov,
    determinant,
    load_khovanov_ranks,
    two_bridge_prediction,
)
from .solver import SolverConfig, solve
from .symplectic import (
    cap_pullback_max,
    check_braid_invariance,
    check_gamma_lagrangian,
    monotonicity_ratio,
    nondegeneracy_rank,
    random_k_points,
    sigma_tilde,
)

SCHEMA_VERSION = 1
VERIFY_SUITES = ("symplectic", "lagrangian", "hessian", "chern", "monotone", "all")


# --- record plumbing ---------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def _persist(run_dir: str, command: str, config: dict, results: dict,
             checks: list[dict]) -> tuple[dict, Path]:
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "results": results,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
    directory = Path(run_dir)
    directory.mkdir(parents=True, exist_ok=True)
    stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%f")
    path = directory / f"{command}-{stamp}.json"
    path.write_text(json.dumps(record, indent=2, sort_keys=True,
                               default=_jsonable))
    return record, path


def _emit(record: dict, as_json: bool, table_lines: list[str]) -> None:
    if as_json:
        click.echo(json.dumps(record, indent=2, sort_keys=True,
                              default=_jsonable))
    else:
        for line in table_lines:
            click.echo(line)


def _check_table(checks: list[dict]) -> list[str]:
    lines = []
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        if c["kind"] == "abs_le":
            detail = f"|{c['value']:.3e}| <= {c['threshold']:.0e}"
        elif c["kind"] == "gt":
            detail = f"{c['value']:.3e} > {c['threshold']:.0e}"
        else:
            detail = f"{c['value']} == {c['expected']}"
        lines.append(f"{status}  {c['name']}: {detail}")
    return lines


def _abs_check(name: str, value: float, threshold: float) -> dict:
    return {"name": name, "kind": "abs_le", "value": float(value),
            "threshold": threshold, "passed": bool(abs(value) <= threshold)}


def _gt_check(name: str, value: float, threshold: float) -> dict:
    return {"name": name, "kind": "gt", "value": float(value),
            "threshold": threshold, "passed": bool(value > threshold)}


def _eq_check(name: str, value, expected) -> dict:
    return {"name": name, "kind": "equals", "value": value,
            "expected": expected, "passed": bool(value == expected)}


def _resolve_word(name: str | None, braid_text: str | None) -> tuple[str, BraidWord]:
    if (name is None) == (braid_text is None):
        raise click.UsageError("give exactly one of --name or --braid")
    if name is not None:
        try:
            return name, knot_by_name(name).word
        except KeyError as exc:
            raise click.UsageError(str(exc)) from None
    try:
        return braid_text, parse_braid(braid_text)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


def _io_options(fn):
    fn = click.option("--run-dir", default="runs", show_default=True,
                      type=click.Path(file_okay=False),
                      help="directory for the per-invocation JSON record")(fn)
    fn = click.option("--json/--table", "as_json", default=False,
                      show_default=True, help="stdout format")(fn)
    return fn


# --- commands ----------------------------------------------------------------


@click.group()
@click.version_option(__version__, prog_name="repvar")
def cli() -> None:
    """Trace-free SU(2) representation varieties of braid closures."""


@cli.command()
@click.option("--name", default=None, help="knot from the shipped table")
@click.option("--braid", "braid_text", default=None,
              help='braid word, e.g. "3: 1 -2 1 -2"')
@click.option("--seeds", type=int, default=None,
              help="random solver restarts [default: solver's 1536]")
@click.option("--seed", type=int, default=0, show_default=True,
              help="RNG seed")
@click.option("--tol", type=float, default=None,
              help="survivor residual tolerance [default: solver's 1e-12]")
@click.option("--link-radius", type=float, default=None,
              help="clustering radius [default: solver's 0.15]")
@click.option("--khovanov-csv", type=click.Path(exists=True, dir_okay=False),
              default=None, help="'name,rank' CSV overriding the shipped one")
@_io_options
def variety(name, braid_text, seeds, seed, tol, link_radius, khovanov_csv,
            as_json, run_dir) -> None:
    """Solve for the components of the variety of a braid closure."""
    label, word = _resolve_word(name, braid_text)
    config = SolverConfig(rng_seed=seed)
    overrides = {}
    if seeds is not None:
        overrides["seeds"] = seeds
    if tol is not None:
        overrides["descent_tol"] = tol
    if link_radius is not None:
        overrides["link_radius"] = link_radius
    config = dataclasses.replace(config, **overrides)
    report = solve(word, config)

    results = {
        "input": label,
        "strands": word.strands,
        "letters": list(word.letters),
        "closure_components": closure_components(word),
        "full_variety": report.full_variety,
        "note": report.note,
        "seeds_total": report.seeds_total,
        "seeds_converged": report.seeds_converged,
        "component_count": len(report.components),
        "components": [
            {
                "id": c.id,
                "topology_tag": c.topology_tag,
                "est_dimension": c.est_dimension,
                "sample_count": c.sample_count,
                "residual": c.residual,
                "is_abelian": c.is_abelian,
                "is_binary_dihedral": c.is_binary_dihedral,
                "representative": c.representative.as_array().tolist(),
            }
            for c in report.components
        ],
    }
    if results["closure_components"] == 1 and report.components:
        # each component carries rational cohomology rank 2, so the variety
        # rank is twice the component count; compare when a rank is supplied
        variety_rank = 2 * len(report.components)
        try:
            cmp_report = compare_khovanov(label, variety_rank, khovanov_csv)
        except KeyError:
            cmp_report = None
        if cmp_report is not None:
            results["khovanov"] = {
                "variety_rank": cmp_report.variety_rank,
                "khovanov_rank": cmp_report.khovanov_rank,
                "matches": cmp_report.matches,
            }

    record, _ = _persist(run_dir, "variety", _config_echo(locals()), results, [])
    lines = [f"{label}: {len(report.components)} component(s), "
             f"{report.seeds_converged}/{report.seeds_total} seeds converged"]
    if report.full_variety:
        lines.append(f"  note: {report.note}")
    for c in report.components:
        lines.append(
            f"  [{c.id}] dim={c.est_dimension} tag={c.topology_tag} "
            f"samples={c.sample_count} residual={c.residual:.2e}")
    if "khovanov" in results:
        kh = results["khovanov"]
        verdict = "match" if kh["matches"] else "MISMATCH"
        lines.append(f"  khovanov: variety rank {kh['variety_rank']} vs "
                     f"{kh['khovanov_rank']} ({verdict})")
    _emit(record, as_json, lines)


@cli.command()
@click.option("--name", default=None, help="knot from the shipped table")
@click.option("--braid", "braid_text", default=None,
              help='braid word, e.g. "2: 1 1 1"')
@click.option("--khovanov-csv", type=click.Path(exists=True, dir_okay=False),
              default=None, help="'name,rank' CSV overriding the shipped one")
@_io_options
def invariants(name, braid_text, khovanov_csv, as_json, run_dir) -> None:
    """Exact Alexander polynomial, determinant, component prediction."""
    label, word = _resolve_word(name, braid_text)
    pieces = closure_components(word)
    if pieces != 1:
        raise click.UsageError(
            f"closure of {label!r} is a {pieces}-component link; "
            "invariants need a knot")
    poly = alexander(word)
    det = determinant(word)
    prediction = two_bridge_prediction(det)
    results = {
        "input": label,
        "strands": word.strands,
        "letters": list(word.letters),
        "alexander": {
            "text": str(poly),
            "min_exp": poly.min_exp,
            "coeffs": list(poly.coeffs),
        },
        "determinant": det,
        "two_bridge_prediction": dataclasses.asdict(prediction),
    }
    try:
        ranks = load_khovanov_ranks(khovanov_csv)
        if label in ranks:
            results["khovanov_rank"] = ranks[label]
            results["prediction_matches_khovanov"] = (
                prediction.cohomology_rank == ranks[label])
    except OSError:
        pass

    record, _ = _persist(run_dir, "invariants", _config_echo(locals()),
                         results, [])
    lines = [
        f"{label}: Alexander {poly}",
        f"  determinant {det}",
        f"  two-bridge prediction: 1 sphere + {prediction.projective_spaces} "
        f"RP^3 = {prediction.total_components} components, "
        f"cohomology rank {prediction.cohomology_rank}",
    ]
    if "khovanov_rank" in results:
        lines.append(f"  khovanov rank {results['khovanov_rank']} "
                     f"(prediction {'matches' if results['prediction_matches_khovanov'] else 'differs'})")
    _emit(record, as_json, lines)


def _suite_symplectic(trials: int, seed: int) -> list[dict]:
    checks = []
    for strands in (4, 6, 8):
        worst = 0.0
        for k in range(1, strands):
            for sign in (1, -1):
                worst = max(worst, check_braid_invariance(
                    sign * k, strands, trials, seed))
        checks.append(_abs_check(
            f"invariance_all_generators_{strands}_strands", worst, 1e-10))
    for pairs in (2, 3):
        rng = np.random.default_rng(seed)
        pts = random_k_points(pairs, 100, rng)
        ranks = {nondegeneracy_rank(p) for p in pts}
        checks.append(_eq_check(
            f"form_rank_on_{pairs}_pair_product_one_locus",
            sorted(ranks), [4 * pairs]))
    return checks


def _suite_lagrangian(trials: int, seed: int, words: int = 20) -> list[dict]:
    checks = []
    trefoil_image = sigma_tilde(knot_by_name("3_1").word)
    checks.append(_abs_check(
        "doubled_word_image", check_gamma_lagrangian(trefoil_image, trials, seed),
        1e-10))
    for strands in (4, 6):
        ident = BraidWord(strands, ())
        checks.append(_abs_check(
            f"identity_{strands}_strands",
            check_gamma_lagrangian(ident, trials, seed), 1e-10))
        rng = np.random.default_rng(seed + strands)
        worst = 0.0
        for _ in range(words):
            length = int(rng.integers(1, 9))
            letters = tuple(
                int(rng.integers(1, strands)) * (1 if rng.random() < 0.5 else -1)
                for _ in range(length))
            worst = max(worst, check_gamma_lagrangian(
                BraidWord(strands, letters), trials, seed))
        checks.append(_abs_check(
            f"random_words_{strands}_strands", worst, 1e-10))
    return checks


def _suite_hessian() -> list[dict]:
    sizes = range(2, 9)
    table = hessian_mod.pfaffian_recurrence(8)
    direct = [hessian_mod.pfaffian(hessian_mod.build_hprime(n)) for n in sizes]
    checks = [
        _eq_check("parity_swap_negates",
                  [hessian_mod.check_php(n) for n in sizes], [True] * 7),
        _eq_check("signature_zero",
                  [hessian_mod.signature(n) for n in sizes], [0] * 7),
        _gt_check("min_abs_eigenvalue",
                  min(hessian_mod.min_abs_eigenvalue(n) for n in sizes), 1e-2),
        _eq_check("pfaffian_recurrence_vs_direct", direct, table),
        _eq_check("pfaffian_table", table, [2, 5, 12, 29, 70, 169, 408]),
        _eq_check("det_equals_pfaffian_fourth",
                  [hessian_mod.det_factorization(n).matches for n in (2, 3, 4)],
                  [True] * 3),
    ]
    return checks


def _suite_chern() -> list[dict]:
    return [
        _abs_check("modulus_deviation_first_contour",
                   chern_mod.modulus_deviation(), 1e-9),
        _abs_check("modulus_deviation_second_contour",
                   chern_mod.modulus_deviation(second_contour=True), 1e-9),
        _abs_check("junction_gap_max",
                   float(np.max(chern_mod.junction_gaps())), 1e-9),
        _eq_check("winding_first_contour", chern_mod.winding_number(), -1),
        _eq_check("winding_second_contour",
                  chern_mod.winding_number(second_contour=True), -1),
        _eq_check("chern_pairing", chern_mod.chern_pairing(), -2),
    ]


def _suite_monotone() -> list[dict]:
    rep = monotonicity_ratio()
    return [
        _abs_check("cylinder_integral_plus_pi_squared",
                   rep.fn_integral + math.pi ** 2, 1e-8),
        _abs_check("cap_pullback_max", cap_pullback_max(2), 1e-12),
        _abs_check("adjacent_pair_sphere_form_max", rep.gamma_form_max, 1e-12),
        _eq_check("chern_pairing", rep.chern_pairing, -2),
        _abs_check("ratio_minus_half_pi_squared",
                   rep.ratio - math.pi ** 2 / 2.0, 1e-6),
    ]


@cli.command()
@click.argument("which", type=click.Choice(VERIFY_SUITES))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=1000, show_default=True,
              help="random frame pairs per invariance/vanishing check")
@_io_options
@click.pass_context
def verify(ctx, which, seed, trials, as_json, run_dir) -> None:
    """Run a named check suite; exit nonzero iff any check fails."""
    suites = {
        "symplectic": lambda: _suite_symplectic(trials, seed),
        "lagrangian": lambda: _suite_lagrangian(trials, seed),
        "hessian": _suite_hessian,
        "chern": _suite_chern,
        "monotone": _suite_monotone,
    }
    checks: list[dict] = []
    selected = VERIFY_SUITES[:-1] if which == "all" else (which,)
    for suite_name in selected:
        for check in suites[suite_name]():
            checks.append({**check, "name": f"{suite_name}.{check['name']}"})
    results = {"suite": which, "trials": trials,
               "failed": [c["name"] for c in checks if not c["passed"]]}
    record, _ = _persist(run_dir, "verify", _config_echo(locals()), results,
                         checks)
    lines = _check_table(checks)
    lines.append("all checks passed" if record["passed"]
                 else f"{len(results['failed'])} check(s) FAILED")
    _emit(record, as_json, lines)
    if not record["passed"]:
        ctx.exit(1)


@cli.command(name="hessian")
@click.option("--n", "pairs", type=int, default=4, show_default=True,
              help="number of sphere pairs")
@_io_options
@click.pass_context
def hessian_cmd(ctx, pairs, as_json, run_dir) -> None:
    """Integer Hessian report: matrix, signature, Pfaffian table."""
    if pairs < 2:
        raise click.UsageError("--n must be at least 2")
    fact = hessian_mod.det_factorization(pairs)
    table_max = max(pairs, 3)
    results = {
        "n": pairs,
        "matrix": hessian_mod.build_hessian(pairs).tolist(),
        "signature": hessian_mod.signature(pairs),
        "min_abs_eigenvalue": hessian_mod.min_abs_eigenvalue(pairs),
        "hprime": hessian_mod.build_hprime(pairs).tolist(),
        "pfaffian_table": hessian_mod.pfaffian_recurrence(table_max),
        "hessian_det": fact.hessian_det,
        "hprime_pfaffian": fact.hprime_pfaffian,
    }
    checks = [
        _eq_check("parity_swap_negates", hessian_mod.check_php(pairs), True),
        _eq_check("signature_zero", results["signature"], 0),
        _eq_check("det_equals_pfaffian_fourth", fact.matches, True),
        _eq_check("recurrence_matches_direct",
                  results["pfaffian_table"][pairs - 2], fact.hprime_pfaffian),
    ]
    record, _ = _persist(run_dir, "hessian", _config_echo(locals()), results,
                         checks)
    lines = [f"n={pairs}: signature {results['signature']}, "
             f"min |eig| {results['min_abs_eigenvalue']:.4f}, "
             f"det {fact.hessian_det} = {fact.hprime_pfaffian}^4",
             f"Pfaffian table (n=2..{table_max}): {results['pfaffian_table']}"]
    lines += _check_table(checks)
    _emit(record, as_json, lines)
    if not record["passed"]:
        ctx.exit(1)


@cli.command(name="chern")
@click.option("--samples", type=int, default=64, show_default=True,
              help="samples per contour segment (minimum 64)")
@_io_options
@click.pass_context
def chern_cmd(ctx, samples, as_json, run_dir) -> None:
    """Contour report: determinant modulus, junctions, windings, pairing."""
    modulus_first = chern_mod.modulus_deviation(samples)
    modulus_second = chern_mod.modulus_deviation(samples, second_contour=True)
    junctions = chern_mod.junction_gaps()
    winding_first = chern_mod.winding_number(samples)
    winding_second = chern_mod.winding_number(samples, second_contour=True)
    results = {
        "samples_per_segment": samples,
        "modulus_deviation_first_contour": modulus_first,
        "modulus_deviation_second_contour": modulus_second,
        "junction_gaps": junctions.tolist(),
        "winding_first_contour": winding_first,
        "winding_second_contour": winding_second,
        "pairing": winding_first + winding_second,
    }
    checks = [
        _abs_check("per_segment_modulus_first", modulus_first, 1e-9),
        _abs_check("per_segment_modulus_second", modulus_second, 1e-9),
        _abs_check("junction_gap_max", float(np.max(junctions)), 1e-9),
        _eq_check("winding_first_contour", winding_first, -1),
        _eq_check("winding_second_contour", winding_second, -1),
        _eq_check("pairing", results["pairing"], -2),
    ]
    record, _ = _persist(run_dir, "chern", _config_echo(locals()), results,
                         checks)
    lines = [f"windings {winding_first} + {winding_second} = "
             f"{results['pairing']}"]
    lines += _check_table(checks)
    _emit(record, as_json, lines)
    if not record["passed"]:
        ctx.exit(1)


def _config_echo(local_vars: dict) -> dict:
    skip = {"ctx", "record", "results", "checks", "lines", "report", "word",
            "poly", "prediction", "config", "fact", "junctions"}
    out = {}
    for key, value in local_vars.items():
        if key.startswith("_") or key in skip:
            continue
        if isinstance(value, (str, int, float, bool, type(None))):
            out[key] = value
    return out


def main() -> None:
    cli(auto_envvar_prefix="REPVAR")


if __name__ == "__main__":
    main()
