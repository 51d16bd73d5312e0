"""Command-line front end: ``qsimon <group> <command>``.

Exit codes: 0 success, 2 usage error, 3 a ``verify`` check failed.
Relative ``--out`` paths resolve against ``$QSIMON_OUT_DIR`` when it is set.
All output is deterministic for a fixed seed.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .decompose import LoweringScheme
from .simon import block_to_int, decrypt, encrypt, get_variant, int_to_block, key_schedule

MISMATCH_EXIT = 3
OUT_DIR_ENV = "QSIMON_OUT_DIR"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
        return
    path = Path(out)
    if not path.is_absolute() and os.environ.get(OUT_DIR_ENV):
        path = Path(os.environ[OUT_DIR_ENV]) / path
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        raise click.ClickException(f"cannot write {path}: {exc.strerror}") from exc
    click.echo(f"wrote {path}", err=True)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _hex(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise click.BadParameter(f"not a hex value: {text!r}") from None


def _variant(ctx, param, value):
    try:
        return get_variant(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


out_option = click.option("--out", type=str, default=None, help="Write to this file instead of stdout.")


@click.group()
@click.version_option(__version__, prog_name="qsimon")
@click.option("--toffoli", type=click.Choice(["amy3", "nc7"]), default="amy3", show_default=True,
              help="Toffoli lowering: T-depth 3 (amy3) or T-depth 7 (nc7).")
@click.option("--mcx-accounting", type=click.Choice(["strict", "paper"]), default=None,
              help="MCX Toffoli accounting; default picks per table row.")
@click.pass_context
def main(ctx, toffoli, mcx_accounting):
    """Quantum key-recovery attacks on SIMON: circuits, costs and simulations."""
    ctx.obj = {"toffoli": toffoli, "mcx": mcx_accounting,
               "scheme": LoweringScheme.parse(toffoli, mcx_accounting or "strict")}


# -- simon --------------------------------------------------------------------------------
@main.group()
def simon():
    """Classical SIMON."""


def _simon_cmd(direction: str):
    @click.option("--variant", required=True, callback=_variant, help="e.g. 32/64 or SIMON48/96")
    @click.option("--key", required=True, help="Master key, hex.")
    @click.option("--rounds", type=int, default=None, help="Reduced rounds (default: full).")
    def cmd(variant, key, rounds, **kw):
        block = kw["pt"] if direction == "encrypt" else kw["ct"]
        keys = key_schedule(variant, _hex(key))
        fn = encrypt if direction == "encrypt" else decrypt
        try:
            out = fn(variant, keys, int_to_block(variant, _hex(block)), rounds)
        except ValueError as exc:
            raise click.BadParameter(str(exc)) from None
        click.echo(f"{block_to_int(variant, out):0{variant.block_bits // 4}X}")
    return cmd


simon.command("encrypt")(click.option("--pt", required=True, help="Plaintext, hex.")(_simon_cmd("encrypt")))
simon.command("decrypt")(click.option("--ct", required=True, help="Ciphertext, hex.")(_simon_cmd("decrypt")))


# -- circuit ------------------------------------------------------------------------------
@main.group()
def circuit():
    """Build and export reversible circuits."""


@circuit.command("build")
@click.option("--variant", default="32/64", callback=_variant, show_default=True)
@click.option("--rounds", type=int, default=None, help="Rounds (default: full; 19 for oracles of 32/64).")
@click.option("--part", type=click.Choice(["enc", "keyexp", "h-d2", "oracle"]), required=True)
@click.option("--attack", type=click.Choice(["qmks", "phase1", "phase2"]), default="qmks", show_default=True,
              help="Which oracle for --part oracle.")
@click.option("--iterator", is_flag=True, help="With --part oracle: the whole iterator U_s U_g.")
@click.option("--format", "fmt", type=click.Choice(["text", "qasm", "summary"]), default="text",
              show_default=True, help="Circuit text, lowered QASM 2.0, or a JSON resource summary.")
@click.option("--seed", type=int, default=2024, show_default=True, help="Seed for the oracle's known pairs.")
@out_option
@click.pass_obj
def circuit_build(obj, variant, rounds, part, attack, iterator, fmt, seed, out):
    """Build one circuit part."""
    from .analysis import summarize_resources
    from .cost import _pairs_for
    from .decompose import lower_circuit
    from .differential import attack_params
    from .iterators import build_phase1_iterator, build_phase2_iterator, build_qmks_iterator
    from .simon_circuits import build_encryption_circuit, build_h_circuit_d2, build_key_expansion

    try:
        if part == "enc":
            c = build_encryption_circuit(variant, rounds)
        elif part == "keyexp":
            c = build_key_expansion(variant, rounds)
        elif part == "h-d2":
            c = build_h_circuit_d2()
        else:
            ap = attack_params(variant.name)
            r = ap.rounds if rounds is None else rounds
            if attack == "qmks":
                it = build_qmks_iterator(variant, r, _pairs_for(variant, r, ap.qmks_pairs, seed))
            elif attack == "phase2":
                it = build_phase2_iterator(variant, r, _pairs_for(variant, r, ap.phase2_pairs, seed),
                                           variant.key_bits - ap.candidate_key_bits)
            else:
                if variant.name != "SIMON32/64":
                    raise ValueError("phase-1 circuits are built for SIMON32/64 only")
                it = build_phase1_iterator("D2")
            c = it.circuit if iterator else it.oracle()
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if fmt == "text":
        _emit(c.to_text(), out)
    elif fmt == "qasm":
        _emit(lower_circuit(c, obj["scheme"]).to_qasm(), out)
    else:
        s = summarize_resources(c, obj["scheme"])
        _emit(_json({"circuit": c.name, "toffoli": obj["toffoli"], **s.to_dict()}), out)


# -- estimate -----------------------------------------------------------------------------
@main.group()
def estimate():
    """Cost tables and attack estimates."""


def _mode(obj, mode: str | None) -> str:
    return mode or obj["mcx"] or "auto"


def _require_amy(obj) -> None:
    if obj["toffoli"] != "amy3":
        raise click.UsageError("cost tables use the amy3 lowering; build circuits with --toffoli nc7 instead")


@estimate.command("table")
@click.option("--id", "table_id", required=True,
              type=click.Choice(["4", "5", "6", "8", "9", "10", "11", "12", "13", "13a", "13b", "14"]))
@click.option("--mode", type=click.Choice(["strict", "paper", "auto"]), default=None,
              help="MCX accounting for every row (default: --mcx-accounting, else auto).")
@click.option("--source", type=click.Choice(["symbolic", "constructive"]), default="symbolic", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "text"]), default="csv", show_default=True)
@out_option
@click.pass_obj
def estimate_table(obj, table_id, mode, source, fmt, out):
    """Computed table rows with a per-cell comparison to the published values."""
    from .cost import table_report
    _require_amy(obj)
    ids = ["13a", "13b"] if table_id == "13" else [table_id]
    try:
        reports = [table_report(t, _mode(obj, mode), source) for t in ids]
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if fmt == "json":
        data = [r.to_dict() for r in reports]
        _emit(_json(data[0] if len(data) == 1 else data), out)
    elif fmt == "text":
        _emit("\n\n".join(r.to_text() for r in reports), out)
    else:
        parts = [r.to_csv() for r in reports]
        _emit(parts[0] + "".join(p.split("\n", 1)[1] for p in parts[1:]), out)


@estimate.command("attack")
@click.option("--variant", required=True, callback=_variant)
@click.option("--technique", type=click.Choice(["qmks", "qrkr"]), required=True)
@click.option("--rounds", type=int, default=None)
@click.option("--mode", type=click.Choice(["strict", "paper", "auto"]), default=None)
@click.option("--source", type=click.Choice(["symbolic", "constructive"]), default="symbolic", show_default=True)
@click.option("--total-work", is_flag=True, help="Also scale gate counts by the repeated runs.")
@out_option
@click.pass_obj
def estimate_attack(obj, variant, technique, rounds, mode, source, total_work, out):
    """Scaled cost rows of one attack as JSON."""
    from .cost import attack_rows, combined_cells, encryption_complexity, render_pow2
    _require_amy(obj)
    try:
        rows = attack_rows(variant.name, technique, rounds, _mode(obj, mode), source)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    doc = {"variant": variant.name, "technique": technique.upper(),
           "ec_log2": round(encryption_complexity(technique, variant.name, rounds), 4), "rows": []}
    for r in rows:
        cells = r.total_work() if total_work else r.cells()
        doc["rows"].append({"technique": r.technique, "rounds": r.rounds, "mode": r.mode,
                            "iterations": r.iterations, "instances": r.instances, "runs": r.runs,
                            "per_iteration": r.per_iteration.row(),
                            "cells": {k: render_pow2(v) for k, v in cells.items()}})
    if len(rows) > 1:
        doc["combined"] = {k: render_pow2(v) for k, v in combined_cells(rows).items()}
    _emit(_json(doc), out)


# -- qaa ----------------------------------------------------------------------------------
def _marked_table(spec: str, space_bits: int) -> np.ndarray:
    """``range:M``, ``mod:K``, ``set:i,j,...`` or a file (``.npy`` bool array or one index per line)."""
    size = 1 << space_bits
    kind, _, arg = spec.partition(":")
    idx = np.arange(size)
    if kind == "range" and arg:
        return idx < int(arg)
    if kind == "mod" and arg:
        return idx % int(arg) == 0
    if kind == "set" and arg:
        mask = np.zeros(size, dtype=bool)
        mask[[int(v) for v in arg.split(",")]] = True
        return mask
    path = Path(spec)
    if not path.exists():
        raise click.BadParameter(f"{spec!r} is neither a predicate id nor a file", param_hint="--marked")
    if path.suffix == ".npy":
        mask = np.load(path).astype(bool).ravel()
        if mask.size != size:
            raise click.BadParameter(f"{path} has {mask.size} entries, expected {size}", param_hint="--marked")
        return mask
    mask = np.zeros(size, dtype=bool)
    mask[[int(t) for t in path.read_text().split()]] = True
    return mask


@main.group()
def qaa():
    """Amplitude amplification simulators."""


@qaa.command("simulate")
@click.option("--space-bits", type=click.IntRange(1, 24), required=True)
@click.option("--marked", required=True, help="range:M, mod:K, set:i,j,... or a file.")
@click.option("--iterations", default="auto", show_default=True, help="auto or an integer.")
@out_option
def qaa_simulate(space_bits, marked, iterations, out):
    """Exact QAA on a per-element amplitude table."""
    from .qaa import simulate_qaa_subspace
    mask = _marked_table(marked, space_bits)
    if not mask.any():
        raise click.BadParameter("no marked elements", param_hint="--marked")
    if iterations != "auto":
        try:
            iterations = int(iterations)
        except ValueError:
            raise click.BadParameter("auto or an integer", param_hint="--iterations") from None
    res = simulate_qaa_subspace(mask, iterations=iterations)
    _emit(_json({"p": res.p, "m": res.iterations, "success_prob": res.success_prob,
                 "distribution_digest": res.digest()}), out)


# -- attack -------------------------------------------------------------------------------
@main.group()
def attack():
    """Desk-scale attack runs."""


@attack.command("toy")
@click.option("--unknown-bits", type=click.IntRange(0, 12), default=12, show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--index-bits", type=click.IntRange(1, 10), default=6, show_default=True)
@click.option("--right-pairs", type=int, default=4, show_default=True)
@click.option("--free-bits", type=click.IntRange(0, 12), default=8, show_default=True)
@click.option("--skip-circuits", is_flag=True, help="Skip the circuit cross-checks of both oracles.")
@out_option
def attack_toy(unknown_bits, seed, index_bits, right_pairs, free_bits, skip_circuits, out):
    """Round-key recovery on 19-round SIMON32/64 with most key bits fixed."""
    from .toy import ToyConfig, run_toy_attack
    try:
        cfg = ToyConfig(unknown_bits, index_bits, right_pairs, free_bits, seed=seed)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    res = run_toy_attack(cfg, check_circuits=not skip_circuits)
    _emit(_json({**res.summary(), "log": res.log}), out)
    if not res.ok:
        sys.exit(MISMATCH_EXIT)


# -- verify -------------------------------------------------------------------------------
@main.command()
@click.option("--suite", type=click.Choice(["all", "simon", "circuits", "decompositions", "tables", "qaa",
                                            "filter", "toy", "complexity"]), default="all", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable results.")
@out_option
def verify(suite, as_json, out):
    """Run acceptance checks; exit 3 if any fails.  Timings are printed only to stdout."""
    from .acceptance import SUITES, run_criteria
    results = run_criteria(SUITES[suite])
    if as_json:
        text = _json([{"criterion": r.number, "title": r.title, "ok": r.ok, "detail": r.detail,
                       "limit_s": r.limit} for r in results])
    else:
        text = "\n".join(r.line(timing=out is None) for r in results)
    _emit(text, out)
    if not all(r.ok for r in results):
        sys.exit(MISMATCH_EXIT)


if __name__ == "__main__":
    main()
