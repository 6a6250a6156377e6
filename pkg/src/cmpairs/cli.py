"""Command-line entry point: ``cmpairs VERB -f FILE ...``."""
import json
import random
import sys
from pathlib import Path

import click

from . import cache
from .dsl import load
from .errors import CmPairsError
from .homological import ExtendedNat, _jsonable, ext, free_resolution
from .local_cohomology import cd_support, grade_via_ext, koszul_grade, lc_dims
from .pairs import (_window, ar_certificate, ass_monomial, cd_pair, glc_truncated, huneke_check,
                    is_cci, is_semidualizing)
from .verifier import DEFAULT_CAPS, collect, run_suite, search_gap


class Session:
    def __init__(self, files, json_path, caps, workers, seed, use_cache):
        self.files = list(files)
        self.json_path = json_path
        self.caps = dict(DEFAULT_CAPS, **caps)
        self.workers = workers
        self.seed = seed
        if use_cache:
            cache.activate(cache.Cache())
        self._env = None

    @property
    def env(self):
        if self._env is None:
            if not self.files:
                raise click.UsageError("no input file given (-f FILE)")
            text = "\n".join(Path(f).read_text() for f in self.files)
            _, self._env = load(text)
        return self._env

    def lookup(self, table, name, what):
        items = getattr(self.env, table)
        if name is None:
            if len(items) == 1:
                return next(iter(items.values()))
            raise click.UsageError(f"--{what} is required ({len(items)} candidates)")
        if name not in items:
            raise click.UsageError(f"unknown {what} {name!r}")
        return items[name]

    def emit(self, text, payload):
        click.echo(text)
        if self.json_path:
            payload = dict(payload, caps=self.caps)
            Path(self.json_path).write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True))


def short(v):
    """Finite values print bare; everything else keeps its kind."""
    if isinstance(v, ExtendedNat) and v.kind == "finite":
        return str(v.value)
    return str(v)


def _parse_caps(ctx, param, values):
    out = {}
    for item in values:
        for kv in item.split(","):
            if not kv:
                continue
            k, _, v = kv.partition("=")
            if not v:
                raise click.BadParameter(f"expected k=v, got {kv!r}")
            out[k.strip()] = int(v) if v.strip().lstrip("-").isdigit() else v.strip()
    return out


def common(fn):
    fn = click.option("-f", "--file", "files", multiple=True, type=click.Path(exists=True),
                      help="Input .cm file or corpus directory.")(fn)
    fn = click.option("--json", "json_path", type=click.Path(), help="Write a JSON report here.")(fn)
    fn = click.option("--caps", multiple=True, callback=_parse_caps, help="Cap overrides, k=v.")(fn)
    fn = click.option("--workers", default=1, show_default=True, type=int)(fn)
    fn = click.option("--seed", default=None, type=int, help="Seed for random sampling.")(fn)
    fn = click.option("--no-cache", is_flag=True, help="Disable the on-disk cache.")(fn)
    return fn


def session(files, json_path, caps, workers, seed, no_cache):
    return Session(files, json_path, caps, workers, seed, not no_cache)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Depth, cohomological dimension and Cohen-Macaulayness of module pairs."""


@main.command()
@common
@click.option("--pair", "pair")
@click.option("--ideal", "ideal")
@click.option("--module", "module")
def depth(pair, ideal, module, **kw):
    """grade of an ideal on a module (two routes), or the depth of a pair."""
    s = session(**kw)
    if pair is not None:
        e = s.lookup("pairs", pair, "pair")
        from .pairs import depth_pair
        d = depth_pair(e.I, e.M, e.N)
        s.emit(f"depth = {short(d)}", {"pair": e.name, "depth": d})
        return
    I = s.lookup("ideals", ideal, "ideal")
    N = s.lookup("modules", module, "module")
    a, b = grade_via_ext(I, N), koszul_grade(I.generators, N)
    s.emit(f"grade = {short(a)} (ext: {short(a)}, koszul: {short(b)})", {"ext": a, "koszul": b})


@main.command()
@common
@click.option("--pair", "pair")
@click.option("--ideal", "ideal")
@click.option("--module", "module")
def cd(pair, ideal, module, **kw):
    """cd of a pair (full strategy report) or of a single module."""
    s = session(**kw)
    if pair is not None or module is None:
        e = s.lookup("pairs", pair, "pair")
        rep = cd_pair(e.I, e.M, e.N, s.caps.get("resolution"))
        agree = " (strategies agree)" if rep.agreement else ""
        s.emit(f"cd = {short(rep.cd.value)} via {rep.strategy}{agree}", rep.to_json())
        return
    I = s.lookup("ideals", ideal, "ideal")
    N = s.lookup("modules", module, "module")
    r = cd_support(I, N)
    s.emit(f"cd = {short(r.value)}", r.to_json())


@main.command("ext")
@common
@click.option("--index", "-i", "index", type=int, required=True)
@click.option("--module", "module", required=True)
@click.option("--target", "target", required=True)
def ext_cmd(index, module, target, **kw):
    """Presentation and Hilbert dims of Ext^i(M, N)."""
    s = session(**kw)
    M = s.lookup("modules", module, "module")
    N = s.lookup("modules", target, "module")
    E = ext(index, M, N, free_resolution(M, s.caps.get("resolution")))
    window = _window(M.ring, [M, N], s.caps["window_pad"])
    dims = {str(d): E.hilbert_dim(d) for d in window if E.hilbert_dim(d)}
    P = E.minimal_presentation()
    s.emit(f"Ext^{index}: {P.rank} generators, total dim on window {sum(dims.values())}",
           {"index": index, "generators": [list(x) for x in P.shifts], "dims": dims})


@main.command()
@common
@click.option("--ideal", "ideal")
@click.option("--module", "module", required=True)
@click.option("--index", "-i", "indices", type=int, multiple=True)
def lc(ideal, module, indices, **kw):
    """Nonzero graded pieces of H^i_I(N) on the default box."""
    s = session(**kw)
    I = s.lookup("ideals", ideal, "ideal")
    N = s.lookup("modules", module, "module")
    indices = list(indices) or list(range(N.ring.n + 1))
    from .local_cohomology import default_box
    t = lc_dims(I, N, indices, default_box(N, s.caps["box_pad"]))
    cells = {f"{i}:{d}": t.dims[(i, d)] for i, d in t.nonzero()}
    lines = [f"H^{i}{list(d)} = {t.dims[(i, d)]}" for i, d in t.nonzero()] or ["all zero on box"]
    s.emit("\n".join(lines), {"box": t.box, "nonzero": cells})


@main.command()
@common
@click.option("--pair", "pair")
@click.option("--index", "-i", "index", type=int, required=True)
def glc(pair, index, **kw):
    """Truncated direct-limit dims of H^i_I(M, N)."""
    s = session(**kw)
    e = s.lookup("pairs", pair, "pair")
    Q = s.caps.get("Q", 4)
    t = glc_truncated(e.I, e.M, e.N, index, Q=Q)
    status = f"stabilized at q={t.stabilized_at}" if t.stabilized else "not stabilized"
    s.emit(f"H^{index}: total {t.total()} on window, {status}",
           {"index": index, "window": t.window, "tables": t.tables, "stabilized": t.stabilized,
            "stabilized_at": t.stabilized_at, "shortcut": t.shortcut})


@main.command("cm-pair")
@common
@click.option("--pair", "pair")
def cm_pair(pair, **kw):
    """Cohen-Macaulay verdict for a pair."""
    s = session(**kw)
    e = s.lookup("pairs", pair, "pair")
    rep = cd_pair(e.I, e.M, e.N, s.caps.get("resolution"))
    s.emit(f"{rep.verdict}: depth={short(rep.depth)}, cd={short(rep.cd.value)}", rep.to_json())


@main.command()
@common
@click.option("--ideal", "ideal")
def cci(ideal, **kw):
    """Cohomologically complete intersection test: grade I = cd_I R."""
    s = session(**kw)
    I = s.lookup("ideals", ideal, "ideal")
    v = is_cci(I)
    s.emit("Yes" if v else "No", {"cci": bool(v)})


@main.command()
@common
@click.option("--module", "module")
def semidualizing(module, **kw):
    """Semidualizing test up to the Ext cap."""
    s = session(**kw)
    C = s.lookup("modules", module, "module")
    v = is_semidualizing(C, s.caps["semidualizing"])
    s.emit(str(v), {"verdict": v.to_json()})


@main.command()
@common
@click.option("--module", "module")
def ass(module, **kw):
    """Associated monomial primes."""
    s = session(**kw)
    M = s.lookup("modules", module, "module")
    primes = ass_monomial(M)
    s.emit("{" + ", ".join(str(p) for p in primes) + "}", {"ass": [str(p) for p in primes]})


@main.command()
@common
@click.option("--pair", "pair")
def huneke(pair, **kw):
    """Finiteness of Ass H^c_I(M, N) at the first non-I-torsion index."""
    s = session(**kw)
    e = s.lookup("pairs", pair, "pair")
    r = huneke_check(e.I, e.M, e.N)
    s.emit(f"c={r.c}, Ass = {{{', '.join(str(p) for p in r.ass)}}}",
           {"c": r.c, "ass": [str(p) for p in r.ass], "finite": r.finite, "note": r.note})


@main.command()
@common
@click.option("--module", "module")
def ar(module, **kw):
    """Freeness certificate."""
    s = session(**kw)
    M = s.lookup("modules", module, "module")
    c = ar_certificate(M)
    s.emit(c.verdict, c.to_json())


@main.command()
@common
@click.option("--all", "run_all", is_flag=True, help="Run every registered property.")
@click.option("--property", "properties", multiple=True)
@click.option("--entry", "entries", multiple=True)
@click.option("--sample", type=int, default=None, help="Evaluate a random sample of entries.")
@click.option("--markdown", "md_path", type=click.Path())
def verify(run_all, properties, entries, sample, md_path, **kw):
    """Run the property suite over a corpus; exit 2 on any failure."""
    s = session(**kw)
    sources = collect(s.files)
    entries = list(entries) or None
    if sample:
        from .verifier import _tasks
        keys = sorted(t[0] for t in _tasks(sources))
        rng = random.Random(s.seed)
        entries = rng.sample(keys, min(sample, len(keys)))
    props = None if run_all or not properties else list(properties)
    report = run_suite(properties=props, caps=s.caps, workers=s.workers, sources=sources,
                       entries=entries)
    c = report.counts()
    payload = report.to_json()
    payload["seed"] = s.seed
    s.emit(f"pass {c['pass']}, fail {c['fail']}, skipped {c['skipped']}", payload)
    for e, p in report.failures:
        click.echo(f"FAIL {e} {p}: {report.entries[e][p]['details']}")
    if md_path:
        Path(md_path).write_text(report.to_markdown() + "\n")
    if not report.ok:
        sys.exit(2)


@main.command("search-gap")
@common
def search_gap_cmd(**kw):
    """Look for pairs with cd_I N < cd_I(M, N) < infinity."""
    s = session(**kw)
    found = search_gap(collect(s.files))
    lines = [f"{c['file']}: ({c['M']}, {c['N']}) wrt {c['ideal']}: cd_N={c['cd_N']} < cd={c['cd_pair']}"
             for c in found] or ["no candidates"]
    s.emit("\n".join(lines), {"candidates": found})


def run():
    try:
        main(standalone_mode=False)
    except click.exceptions.Abort:
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except CmPairsError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except SystemExit:
        raise


if __name__ == "__main__":
    run()
