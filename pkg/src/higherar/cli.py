"""Command-line surface.

Subcommands: check, closure, cone, tower, family, derived, quiver, paper.
All outputs are byte-deterministic given the input file and run options;
the random seed in use is recorded in every report.  Caps can also be set
through HIGHERAR_LENGTH_CAP / HIGHERAR_LAYER_CAP.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass

import click

from . import acceptance, instances
from .algebras import build_algebra
from .derived import u_closure, verify_ct_window
from .dynkin import NotDynkin, build_family
from .homology import global_dimension
from .serialize import (algebra_from_dict, load_json, presentation_from_dict,
                        presentation_to_dict, presentation_to_dot, to_json)
from .taucluster import (NoIsomorphismFound, ar_quiver, cone_algebra,
                         presentation_isomorphic, tau_closure,
                         verify_n_complete)


@dataclass
class RunConfig:
    length_cap: int = 128
    layer_cap: int = 64
    window: tuple = (-2, 2)
    seed: int = 20241
    fmt: str = "text"

    def stamp(self) -> dict:
        return {"seed": self.seed, "length_cap": self.length_cap,
                "layer_cap": self.layer_cap,
                "window": list(self.window)}


def _parse_window(s: str) -> tuple:
    lo, _, hi = s.partition(":")
    return (int(lo), int(hi))


def _load_algebra(path: str, cfg: RunConfig):
    try:
        data = load_json(path)
    except json.JSONDecodeError as exc:
        raise click.ClickException(
            f"{path}: parse error at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}")
    try:
        return algebra_from_dict(data, cfg.length_cap)
    except Exception as exc:
        raise click.ClickException(f"{path}: {type(exc).__name__}: {exc}")


def _emit(cfg: RunConfig, payload: dict, text_lines) -> None:
    if cfg.fmt == "json":
        click.echo(to_json(payload), nl=False)
    else:
        for line in text_lines:
            click.echo(line)


@click.group()
@click.option("--seed", type=int, default=None, help="random seed for the "
              "randomized splitting search (recorded in reports)")
@click.option("--format", "fmt", type=click.Choice(["json", "dot", "text"]),
              default="text")
@click.option("--length-cap", type=int, default=None)
@click.option("--layer-cap", type=int, default=None)
@click.option("--window", type=str, default=None, metavar="LO:HI")
@click.pass_context
def main(ctx, seed, fmt, length_cap, layer_cap, window):
    """Exact toolkit for higher translate closures of bound quiver algebras."""
    cfg = RunConfig()
    cfg.length_cap = int(os.environ.get("HIGHERAR_LENGTH_CAP", cfg.length_cap))
    cfg.layer_cap = int(os.environ.get("HIGHERAR_LAYER_CAP", cfg.layer_cap))
    cfg.seed = int(os.environ.get("HIGHERAR_SEED", cfg.seed))
    if length_cap is not None:
        cfg.length_cap = length_cap
    if layer_cap is not None:
        cfg.layer_cap = layer_cap
    if seed is not None:
        cfg.seed = seed
    if window is not None:
        cfg.window = _parse_window(window)
    cfg.fmt = fmt
    if cfg.length_cap <= 0 or cfg.layer_cap <= 0:
        raise click.ClickException("caps must be positive")
    ctx.obj = cfg


@main.command()
@click.argument("algebra_file", type=click.Path(exists=True))
@click.option("-n", "n", type=int, required=True)
@click.pass_obj
def check(cfg: RunConfig, algebra_file, n):
    """Completeness verdict; exit code 0 exactly when the check passes."""
    alg = _load_algebra(algebra_file, cfg)
    report, closure, _ = verify_n_complete(alg, n, cfg.layer_cap, cfg.length_cap)
    payload = {"config": cfg.stamp(), "input": os.path.basename(algebra_file),
               "report": report.as_dict()}
    lines = [f"n={n} completeness check for {algebra_file}"]
    if report.verdict and report.absolute:
        lines.append(f"verdict: absolutely {n}-complete")
    elif report.verdict:
        lines.append(f"verdict: {n}-complete (not absolute; the tilting part "
                     "differs from the projectives)")
        lines.append("tilting summand dimension vectors: "
                     + ", ".join(str(s) for s in report.tilting_summands))
    else:
        lines.append(f"verdict: NOT {n}-complete")
        lines.extend(f"  note: {note}" for note in report.notes)
    lines.append(f"gl.dim = {report.gl_dim}; layers = {report.layer_sizes}; "
                 f"cone gl.dim = {report.cone_gl_dim}")
    _emit(cfg, payload, lines)
    sys.exit(0 if report.verdict else 1)


@main.command()
@click.argument("algebra_file", type=click.Path(exists=True))
@click.option("-n", "n", type=int, required=True)
@click.option("--figure", type=click.Path(), default=None,
              help="render the layer profile to this file")
@click.option("--full", is_flag=True,
              help="include the full matrices of every closure object")
@click.pass_obj
def closure(cfg: RunConfig, algebra_file, n, figure, full):
    """Translate-closure layers of the injectives."""
    from .serialize import module_to_dict
    alg = _load_algebra(algebra_file, cfg)
    cl = tau_closure(alg, n, cfg.layer_cap)
    payload = {
        "config": cfg.stamp(),
        "layers": cl.layer_sizes(),
        "objects": [{"dims": list(o.dim_vector()), "ell": cl.ell[i]}
                    for i, o in enumerate(cl.objects)],
        "tau_finite": cl.is_tau_finite,
        "layers_disjoint": cl.layers_disjoint,
    }
    if full:
        for entry, obj in zip(payload["objects"], cl.objects):
            entry["module"] = module_to_dict(obj)
    lines = [f"layers: {cl.layer_sizes()} (total {len(cl.objects)} "
             "indecomposables)"]
    for i, o in enumerate(cl.objects):
        lines.append(f"  object {i}: dims {o.dim_vector()} ell={cl.ell[i]}")
    if figure:
        from .figures import draw_layer_profile
        draw_layer_profile(cl.layer_sizes(), figure)
        lines.append(f"layer profile written to {figure}")
    _emit(cfg, payload, lines)


@main.command()
@click.argument("algebra_file", type=click.Path(exists=True))
@click.option("-n", "n", type=int, required=True)
@click.option("-o", "out", type=click.Path(), default=None,
              help="write the cone algebra presentation JSON here")
@click.pass_obj
def cone(cfg: RunConfig, algebra_file, n, out):
    """Endomorphism algebra of the closure generator."""
    alg = _load_algebra(algebra_file, cfg)
    gamma, cat, cl = cone_algebra(alg, n, cfg.layer_cap, cfg.length_cap)
    payload = {
        "config": cfg.stamp(),
        "vertices": len(gamma.vertices),
        "dimension": gamma.dimension,
        "gl_dim": global_dimension(gamma),
        "presentation": presentation_to_dict(gamma.presentation),
        "vertex_modules": {v: list(cat.modules[i].dim_vector())
                           for i, v in enumerate(cat.vertex_of_index)},
    }
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(to_json(presentation_to_dict(gamma.presentation)))
    lines = [f"cone algebra: {len(gamma.vertices)} vertices, dimension "
             f"{gamma.dimension}, gl.dim {global_dimension(gamma)}"]
    if out:
        lines.append(f"presentation written to {out}")
    _emit(cfg, payload, lines)


@main.command()
@click.option("-m", "m", type=int, required=True)
@click.option("--n-max", type=int, required=True)
@click.pass_obj
def tower(cfg: RunConfig, m, n_max):
    """Iterate the cone construction on the linear tower, cross-checking
    each level against the predicted mesh family."""
    from .dynkin import linear_a_quiver
    alg = build_algebra(instances.linear_a_presentation(m), cfg.length_cap)
    rows = [["level", "vertices", "dim", "complete", "matches_family",
             "relations"]]
    counts = [len(alg.vertices)]
    current = alg
    ok_all = True
    for level in range(1, n_max + 1):
        report, cl, cat = verify_n_complete(current, level, cfg.layer_cap,
                                            cfg.length_cap, want_cone=True)
        if not report.verdict or cat is None:
            rows.append([str(level), "-", "-", "FAIL", "-", "-"])
            ok_all = False
            break
        gamma = build_algebra(cat.presentation.opposite(), cfg.length_cap)
        predicted = build_family(linear_a_quiver(m), level, kind="cone")
        try:
            match, _ = presentation_isomorphic(cat.presentation, predicted,
                                               cfg.length_cap)
        except NoIsomorphismFound:
            match = False
        ok_all &= match
        counts.append(len(gamma.vertices))
        rows.append([str(level), str(len(gamma.vertices)),
                     str(gamma.dimension), "yes" if report.verdict else "no",
                     "yes" if match else "NO",
                     str(len(cat.presentation.relations))])
        current = gamma
    payload = {"config": cfg.stamp(), "vertex_counts": counts,
               "levels": [dict(zip(rows[0], r)) for r in rows[1:]],
               "all_match": ok_all}
    lines = ["\t".join(r) for r in rows]
    lines.append(f"vertex counts: {counts}")
    _emit(cfg, payload, lines)
    sys.exit(0 if ok_all else 1)


@main.command()
@click.argument("quiver_file", type=click.Path(exists=True))
@click.option("-n", "n", type=int, required=True)
@click.option("--kind", type=click.Choice(["cone", "cylinder"]),
              default="cone")
@click.option("--dot", "dot_path", type=click.Path(), default=None)
@click.option("--figure", type=click.Path(), default=None)
@click.pass_obj
def family(cfg: RunConfig, quiver_file, n, kind, dot_path, figure):
    """Predicted mesh-family presentation over a Dynkin quiver."""
    try:
        data = load_json(quiver_file)
    except json.JSONDecodeError as exc:
        raise click.ClickException(
            f"{quiver_file}: parse error at line {exc.lineno}, column "
            f"{exc.colno}: {exc.msg}")
    pres = presentation_from_dict(data)
    try:
        fam = build_family(pres.quiver, n, kind=kind,
                           window=cfg.window if kind == "cylinder" else None)
    except NotDynkin as exc:
        raise click.ClickException(str(exc))
    payload = {"config": cfg.stamp(),
               "vertices": len(fam.quiver.vertices),
               "arrows": len(fam.quiver.arrows),
               "relations": len(fam.relations),
               "presentation": presentation_to_dict(fam)}
    lines = [f"family ({kind}, n={n}): {len(fam.quiver.vertices)} vertices, "
             f"{len(fam.quiver.arrows)} arrows, {len(fam.relations)} relations"]
    if dot_path:
        with open(dot_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(presentation_to_dot(fam))
        lines.append(f"dot written to {dot_path}")
    if figure:
        from .figures import draw_presentation
        draw_presentation(fam, figure, f"{kind} family, n={n}")
        lines.append(f"figure written to {figure}")
    if cfg.fmt == "dot":
        click.echo(presentation_to_dot(fam), nl=False)
        return
    _emit(cfg, payload, lines)


@main.command()
@click.argument("algebra_file", type=click.Path(exists=True))
@click.option("-n", "n", type=int, required=True)
@click.pass_obj
def derived(cfg: RunConfig, algebra_file, n):
    """Windowed Serre-shift closure and its vanishing table."""
    alg = _load_algebra(algebra_file, cfg)
    objs = u_closure(alg, n, cfg.window)
    verdict, violations, info = verify_ct_window([o for _, o in objs], n,
                                                 cfg.window)
    payload = {
        "config": cfg.stamp(),
        "objects": {str(ell): [[list(r.dim_vector()), k]
                               for r, k in obj.components]
                    for ell, obj in objs},
        "verdict": verdict,
        "violations": violations,
        "info": info,
    }
    lines = [f"closure powers {cfg.window[0]}..{cfg.window[1]}:"]
    for ell, obj in objs:
        lines.append(f"  power {ell}: {len(obj.components)} components")
    lines.append(f"window vanishing verdict: {'pass' if verdict else 'FAIL'}")
    for v in violations[:5]:
        lines.append(f"  violation: {v}")
    _emit(cfg, payload, lines)
    sys.exit(0 if verdict else 1)


@main.command()
@click.argument("algebra_file", type=click.Path(exists=True))
@click.option("-n", "n", type=int, required=True)
@click.option("--dot", "dot_path", type=click.Path(), default=None)
@click.option("--figure", type=click.Path(), default=None)
@click.pass_obj
def quiver(cfg: RunConfig, algebra_file, n, dot_path, figure):
    """Auslander-Reiten quiver with relations of the translate closure."""
    alg = _load_algebra(algebra_file, cfg)
    cl = tau_closure(alg, n, cfg.layer_cap)
    cat = ar_quiver(cl, cfg.length_cap)
    dot = presentation_to_dot(cat.presentation)
    payload = {"config": cfg.stamp(),
               "presentation": presentation_to_dict(cat.presentation),
               "vertex_modules": {v: list(cat.modules[i].dim_vector())
                                  for i, v in enumerate(cat.vertex_of_index)}}
    lines = [f"AR quiver: {len(cat.presentation.quiver.vertices)} vertices, "
             f"{len(cat.presentation.quiver.arrows)} arrows, "
             f"{len(cat.presentation.relations)} relations"]
    if dot_path:
        with open(dot_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dot)
        lines.append(f"dot written to {dot_path}")
    if figure:
        from .figures import draw_presentation
        draw_presentation(cat.presentation, figure, "AR quiver")
        lines.append(f"figure written to {figure}")
    if cfg.fmt == "dot":
        click.echo(dot, nl=False)
        return
    _emit(cfg, payload, lines)


@main.command()
@click.option("--out-dir", type=click.Path(), default="paper-report",
              help="directory for the TSV report, JSON report, and figures")
@click.option("--only", type=str, default=None,
              help="comma-separated criterion numbers to run")
@click.pass_obj
def paper(cfg: RunConfig, out_dir, only):
    """Run the full acceptance suite; exit 0 exactly when all criteria pass."""
    os.makedirs(out_dir, exist_ok=True)
    selected = [int(x) for x in only.split(",")] if only else None
    ctx = acceptance.Context(seed=cfg.seed, layer_cap=cfg.layer_cap,
                             length_cap=cfg.length_cap)
    results = acceptance.run_all(ctx, selected)

    rows = [["criterion", "name", "passed", "budget_s"]]
    for r in results:
        rows.append([r.key, r.name, "pass" if r.passed else "FAIL",
                     "-" if r.budget is None else f"{r.budget:.0f}"])
    tsv = "\n".join("\t".join(row) for row in rows) + "\n"
    with open(os.path.join(out_dir, "report.tsv"), "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write(tsv)
    timing_rows = [["criterion", "elapsed_s"]] + \
        [[r.key, f"{r.elapsed:.2f}"] for r in results]
    with open(os.path.join(out_dir, "timings.tsv"), "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write("\n".join("\t".join(row) for row in timing_rows) + "\n")
    payload = {"config": cfg.stamp(),
               "criteria": [r.as_dict() for r in results],
               "all_passed": all(r.passed for r in results)}
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write(to_json(payload))

    from .figures import draw_criteria_table, draw_layer_profile, draw_presentation
    draw_criteria_table([(f"{r.key}: {r.name}", r.passed) for r in results],
                        os.path.join(out_dir, "criteria.png"))
    golden = instances.auslander_a3_linear_presentation()
    draw_presentation(golden, os.path.join(out_dir, "golden_algebra.png"),
                      "golden Auslander algebra (linear A3)")
    cl = tau_closure(instances.auslander_a3_linear(), 2, cfg.layer_cap)
    cat = ar_quiver(cl, cfg.length_cap)
    with open(os.path.join(out_dir, "golden_ar_quiver.dot"), "w",
              encoding="utf-8", newline="\n") as fh:
        fh.write(presentation_to_dot(cat.presentation))
    draw_layer_profile(cl.layer_sizes(),
                       os.path.join(out_dir, "golden_layers.png"),
                       "translate layers, golden instance")
    fam = build_family(instances.linear_a_presentation(4).quiver, 2)
    with open(os.path.join(out_dir, "a4_family_n2.dot"), "w",
              encoding="utf-8", newline="\n") as fh:
        fh.write(presentation_to_dot(fam))
    draw_presentation(fam, os.path.join(out_dir, "a4_family_n2.png"),
                      "predicted family, linear A4, n=2")

    for row, res in zip(rows[1:], results):
        click.echo("\t".join(row + [f"{res.elapsed:.2f}s"]))
    ok = all(r.passed for r in results)
    click.echo(f"report written to {out_dir}/ "
               "(report.tsv, timings.tsv, report.json, DOT files, figures)")
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
