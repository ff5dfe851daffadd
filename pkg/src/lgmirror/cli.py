"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import click

from . import verify as V
from .cover import RegionWeights, ResourceLimit

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    signature: tuple[int, int, int] = (3, 3, 3)
    cutoff: Fraction | None = None
    order: int | None = None
    out: Path | None = None
    bless: bool = False
    weights: RegionWeights | None = None
    threads: int = 1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(n < 2 for n in self.signature):
            raise click.UsageError("signature entries must be integers >= 2")
        if self.cutoff is not None and self.cutoff <= 0:
            raise click.UsageError("cutoff must be positive")
        if self.order is not None and self.order <= 0:
            raise click.UsageError("order must be positive")
        if self.threads < 1:
            raise click.UsageError("thread count must be at least 1")


def parse_cutoff(ctx, param, value):
    if value is None:
        return None
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"expected N or N/D, got {value!r}")


def parse_weights(ctx, param, value):
    if value is None:
        return None
    try:
        return RegionWeights.parse(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(str(exc))


def _dump(report) -> str:
    return json.dumps(report, indent=1, default=str, sort_keys=False)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact-arithmetic workbench for the LG mirror of P^1(a,b,c)."""


# -- potential ------------------------------------------------------------------


@main.command()
@click.argument("a", type=int)
@click.argument("b", type=int)
@click.argument("c", type=int)
@click.option("--cutoff", callback=parse_cutoff, default="10", show_default=True, help="Area cutoff N or N/D.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the potential JSON here.")
@click.option("--weights", callback=parse_weights, help="Region weights central,a,b,c.")
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--backend", type=click.Choice(["combinatorial", "lattice"]), default="combinatorial")
@click.option("--max-triangles", type=int, default=2_000_000, show_default=True, help="Tessellation size limit.")
def potential(a, b, c, cutoff, out, weights, threads, backend, max_triangles):
    """Enumerate polygons and write the potential of P^1(a,b,c)."""
    from .enumerate import compute_potential

    cfg = RunConfig("potential", (a, b, c), cutoff, out=out, weights=weights, threads=threads)
    try:
        w, polys = compute_potential(cfg.signature, cfg.cutoff, cfg.weights, cfg.threads, backend, max_triangles)
    except ResourceLimit as exc:
        click.echo(f"resource limit: {exc}", err=True)
        sys.exit(EXIT_RESOURCE)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    text = w.to_json()
    if out:
        out.write_text(text + "\n")
        click.echo(f"{len(polys)} polygons, {len(w.monomials)} monomials -> {out}")
    else:
        click.echo(text)


# -- verify -------------------------------------------------------------------------

TARGETS = {
    "potential-333": lambda cfg: V.check_potential_333(cfg.cutoff or 200, threads=cfg.threads),
    "jacobi": lambda cfg: V.check_jacobi(cfg.order or 2000),
    "mirror-map": lambda cfg: V.check_mirror_map(cfg.order or 500),
    "integrality": lambda cfg: V.check_integrality(cfg.order or 100),
    "mf-seidel": lambda cfg: V.check_mf_seidel(cfg.cutoff or 100),
    "wedge": lambda cfg: V.check_wedge(cfg.extra.get("trials", 200), cfg.extra.get("seed", 0)),
    "long-diagonal": lambda cfg: V.check_long_diagonal(),
    "p1-fixture": lambda cfg: V.check_p1_fixture(),
    "ainfty": lambda cfg: V.check_ainfty_suite(cfg.cutoff or 30, cfg.extra.get("k_max", 5)),
    "quotient": lambda cfg: V.check_quotient(cfg.cutoff or 100),
    "backends": lambda cfg: V.check_backends(cfg.cutoff or 100, cfg.threads),
    "leading-terms": lambda cfg: V.check_leading_terms(),
    "golden": lambda cfg: check_golden(cfg.bless),
}


@main.command("verify")
@click.argument("target", type=click.Choice(sorted(TARGETS) + ["all"]))
@click.option("--cutoff", callback=parse_cutoff, help="Area cutoff N or N/D.")
@click.option("--order", type=int, help="Series order.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the JSON report here.")
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--trials", type=int, default=200, show_default=True, help="Random cases for wedge.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--kmax", type=int, default=5, show_default=True, help="Largest arity for ainfty.")
@click.option("--bless", is_flag=True, help="Regenerate golden files (golden target only).")
def verify_cmd(target, cutoff, order, out, threads, trials, seed, kmax, bless):
    """Run a verification and report pass or fail."""
    cfg = RunConfig(
        "verify", cutoff=cutoff, order=order, out=out, bless=bless, threads=threads,
        extra={"trials": trials, "seed": seed, "k_max": kmax},
    )
    names = [t for t in TARGETS if t != "golden"] if target == "all" else [target]
    reports = []
    try:
        for name in names:
            rep = TARGETS[name](cfg)
            reports.append(rep)
            click.echo(f"[{'PASS' if rep['pass'] else 'FAIL'}] {name}")
    except ResourceLimit as exc:
        click.echo(f"resource limit: {exc}", err=True)
        sys.exit(EXIT_RESOURCE)
    report = reports[0] if len(reports) == 1 else {"check": "all", "pass": all(r["pass"] for r in reports),
                                                    "reports": reports}
    text = _dump(report)
    if out:
        out.write_text(text + "\n")
    else:
        click.echo(text)
    sys.exit(EXIT_PASS if report["pass"] else EXIT_FAIL)


# -- golden corpus --------------------------------------------------------------------


def golden_dir() -> Path:
    return Path(str(resources.files("lgmirror") / "golden"))


def golden_artifacts() -> dict[str, str]:
    """Regenerate every golden file as text."""
    from .plot import MINIMAL_XYZ, render_svg
    from .quotient import search_generator_labels, z3_labeling

    w, fd, mf = V.seidel_data(100)
    labels = search_generator_labels(mf, z3_labeling())
    return {
        "w333_c100.json": w.to_json() + "\n",
        "gamma333_c100.json": json.dumps(fd.gamma.to_dict(), indent=1) + "\n",
        "seidel_z3_labels.json": json.dumps(labels.to_dict(), indent=1) + "\n",
        "patch333_r2.svg": render_svg(2, [MINIMAL_XYZ]),
    }


def check_golden(bless: bool = False) -> dict:
    folder = golden_dir()
    fresh = golden_artifacts()
    files = {}
    for name, text in fresh.items():
        path = folder / name
        old = path.read_text() if path.exists() else None
        status = "same" if old == text else ("missing" if old is None else "changed")
        if bless and status != "same":
            folder.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            status = "blessed (" + status + ")"
        files[name] = status
    ok = all(s == "same" or s.startswith("blessed") for s in files.values())
    return {"check": "golden", "pass": ok, "bless": bless, "files": files}


# -- svg ---------------------------------------------------------------------------


def parse_highlight(text: str):
    from .plot import MINIMAL_XYZ

    if text == "none":
        return []
    if text == "minimal":
        return [MINIMAL_XYZ]
    out = []
    for item in text.split(";"):
        parts = item.split(",")
        if len(parts) != 4 or parts[3] not in ("up", "down"):
            raise click.BadParameter(f"expected I,J,N,up|down; got {item!r}")
        i, j, n = (int(p) for p in parts[:3])
        if not (i % 2 or j % 2) or n < 1 or n % 2 == 0:
            raise click.BadParameter("corner must be an edge midpoint and N a positive odd number")
        out.append(((i, j), n, parts[3] == "up"))
    return out


@main.command()
@click.argument("a", type=int)
@click.argument("b", type=int)
@click.argument("c", type=int)
@click.option("--radius", type=int, default=2, show_default=True)
@click.option("--highlight", default="minimal", show_default=True,
              help="'minimal', 'none', or 'I,J,N,up|down' line triangles separated by ';'.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--bless", is_flag=True, help="Also overwrite the golden patch SVG.")
def svg(a, b, c, radius, highlight, out, bless):
    """Draw a patch of the (3,3,3) cover with medial lines and markers."""
    from .plot import render_svg

    cfg = RunConfig("svg", (a, b, c), out=out, bless=bless)
    if cfg.signature != (3, 3, 3):
        raise click.UsageError("only the flat (3,3,3) patch can be drawn")
    if radius < 1:
        raise click.UsageError("radius must be at least 1")
    text = render_svg(radius, parse_highlight(highlight))
    if bless:
        (golden_dir() / "patch333_r2.svg").write_text(render_svg(2, parse_highlight("minimal")))
    if out:
        out.write_text(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
