"""Batch property runner over a corpus of `.cm` files.

Each property carries a hypothesis predicate so that "skipped" (hypothesis
not met, or values not exact) is reported separately from "pass".
"""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

from .dsl import load
from .errors import CmPairsError, CorpusParseError, DslError
from .groebner import radical_contains
from .homological import (ExtendedNat, _jsonable, ext, ext_dim, free_resolution, pd,
                          tor_dim)
from .local_cohomology import (_box_degrees, cd_support, cech_cohomology, deficiency,
                               depth_via_deficiency, grade_via_ext, is_relative_cm_m,
                               koszul_grade)
from .module import GradedModule
from .pairs import (ar_certificate, ass_monomial, cd_pair, dual, huneke_check, is_cci,
                    is_semidualizing, is_totally_C_reflexive, single_ext, torsion_submodule)

DEFAULT_CAPS = {"resolution": None, "semidualizing": 6, "box_pad": 2, "window_pad": 2}


@dataclass
class Outcome:
    status: str
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {"status": self.status, "details": _jsonable(self.details)}


class Skip(Exception):
    """Raised inside a property when its hypothesis does not hold."""


# -- value formatting -----------------------------------------------------------------------

def fmt(v):
    """Canonical short text for comparing with expectations."""
    if isinstance(v, ExtendedNat):
        return {"finite": str(v.value), "infinite": "inf", "neg_infinite": "-inf",
                "at_least": f">={v.value}"}[v.kind]
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple, set, frozenset)):
        return "{" + ",".join(sorted(str(x).replace(" ", "") for x in v)) + "}"
    return str(v).replace(" ", "").lower()


def norm(text):
    return text.replace(" ", "").lower()


# -- per-entry context ----------------------------------------------------------------------

class Context:
    """Lazily computed values for one pair entry."""

    def __init__(self, entry, caps):
        self.entry = entry
        self.caps = caps
        self.ring = entry.ring
        self.I, self.M, self.N = entry.I, entry.M, entry.N
        self._memo = {}

    def get(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    @property
    def is_m(self):
        return self.get("is_m", self.I.is_maximal_graded)

    @property
    def report(self):
        return self.get("report", lambda: cd_pair(self.I, self.M, self.N, self.caps.get("resolution")))

    @property
    def res(self):
        cap = self.caps.get("resolution") or self.ring.n + 4
        return self.get("res", lambda: free_resolution(self.M, cap))

    def cd_of(self, X, key):
        return self.get(("cd", key), lambda: cd_support(self.I, X, self.box(X)).value)

    def grade_of(self, X, key):
        return self.get(("grade", key), lambda: grade_via_ext(self.I, X))

    def box(self, X):
        from .local_cohomology import default_box
        return default_box(X, self.caps["box_pad"])

    def window(self, mods):
        from .pairs import _window
        return _window(self.ring, mods, self.caps["window_pad"])

    @property
    def single(self):
        return self.get("single", lambda: single_ext(self.M, self.N, self.res))

    def ext_module(self, e):
        return self.get(("ext", e), lambda: ext(e, self.M, self.N, self.res))

    def semidualizing(self, C, key):
        return self.get(("sd", key), lambda: bool(is_semidualizing(C, self.caps["semidualizing"])))

    def glc_dim(self, i, d):
        """dim H^i_I(M, N)_d from an exact route, or None."""
        rep = self.report
        if rep.strategy == "IM=0" and rep.e.is_exact:
            return ext_dim(i, self.M, self.N, d, self.res)
        one = self.single
        if one is not None and one[1] == "exact":
            e = one[0]
            if i < e:
                return 0
            E = self.ext_module(e)
            if self.is_m:
                return deficiency(i - e, E).lc_dim(d)
            if self.ring.fine:
                return cech_cohomology(self.I, E, i - e, (d, d)).get(i - e, d)
        return None


# -- properties -------------------------------------------------------------------------------

PROPERTIES = {}


def prop(name):
    def deco(fn):
        PROPERTIES[name] = fn
        return fn
    return deco


def _le(a, b, what):
    r = a.le(b)
    if r is None:
        raise Skip(f"{what}: inexact values {a}, {b}")
    return r


@prop("chain")
def p_chain(ctx):
    """depth_I N <= depth_I(M,N) <= cd_I(M,N) <= cd_I N + h."""
    rep = ctx.report
    dN = ctx.grade_of(ctx.N, "N")
    cdN = ctx.cd_of(ctx.N, "N")
    steps = {"depth_N <= depth_pair": _le(dN, rep.depth, "chain"),
             "depth_pair <= cd_pair": _le(rep.depth, rep.cd.value, "chain")}
    if ctx.is_m and rep.h is not None and rep.h.is_exact and cdN.is_exact:
        steps["cd_pair <= cd_N + h"] = _le(rep.cd.value, cdN.plus(rep.h), "chain")
    return all(steps.values()), {"depth_N": str(dN), "depth_pair": str(rep.depth),
                                 "cd_pair": str(rep.cd.value), "cd_N": str(cdN),
                                 "h": str(rep.h), "steps": steps}


@prop("bounds")
def p_bounds(ctx):
    """depth_I(M,N) <= cd_I(M,N) <= min(cd_I(M (x) N) + e, cd_I N + h)."""
    rep = ctx.report
    cdT = ctx.cd_of(ctx.M.tensor(ctx.N), "MN")
    uppers = {"cd(M(x)N)+e": cdT.plus(rep.e)}
    if ctx.is_m and rep.h is not None:
        uppers["cd N+h"] = ctx.cd_of(ctx.N, "N").plus(rep.h)
    lower = _le(rep.depth, rep.cd.value, "bounds")
    # an AtLeast upper bound can still decide the comparison
    decided = {k: rep.cd.value.le(u) for k, u in uppers.items()}
    decided = {k: v for k, v in decided.items() if v is not None}
    if not decided:
        raise Skip("no decidable upper bound")
    return lower and all(decided.values()), {
        "depth_pair": str(rep.depth), "cd_pair": str(rep.cd.value),
        "upper": {k: str(v) for k, v in uppers.items()}, "decided": decided}


@prop("m+e")
def p_m_plus_e(ctx):
    """With e finite: cd_pair <= cd(M (x) N) + e, with equality iff cd Ext^e = cd(M (x) N)."""
    rep = ctx.report
    e = rep.e
    if e.kind != "finite":
        raise Skip(f"e = {e} is not finite")
    if not rep.cd.value.is_exact:
        raise Skip("cd_pair not exact")
    cdT = ctx.cd_of(ctx.M.tensor(ctx.N), "MN")
    cdE = ctx.cd_of(ctx.ext_module(e.value), ("E", e.value))
    bound = cdT.plus(e.value)
    ineq = _le(rep.cd.value, bound, "m+e")
    lhs = rep.cd.value.eq(bound)
    rhs = cdE.eq(cdT)
    if lhs is None or rhs is None:
        raise Skip("inexact values")
    return ineq and (lhs == rhs), {"cd_pair": str(rep.cd.value), "cd_tensor": str(cdT),
                                   "e": e.value, "cd_ext": str(cdE), "equality": lhs}


@prop("single-ext")
def p_single_ext(ctx):
    """Unique nonzero Ext^e: depth and cd shift by e; CM pair iff Ext^e relative CM."""
    one = ctx.single
    if one is None or one[1] != "exact":
        raise Skip("not exactly one nonzero Ext")
    e = one[0]
    E = ctx.ext_module(e)
    rep = ctx.report
    dE = grade_via_ext(ctx.I, E).plus(e)
    cE = ctx.cd_of(E, ("E", e)).plus(e)
    depth_ok = dE.eq(rep.depth)
    cd_ok = cE.eq(rep.cd.value)
    E_cm = grade_via_ext(ctx.I, E).eq(ctx.cd_of(E, ("E", e)))
    pair_cm = rep.verdict.kind == "yes"
    if None in (depth_ok, cd_ok, E_cm):
        raise Skip("inexact values")
    return depth_ok and cd_ok and (E_cm == pair_cm), {
        "e": e, "depth_pair": str(rep.depth), "depth_ext+e": str(dE),
        "cd_pair": str(rep.cd.value), "cd_ext+e": str(cE), "ext_cm": E_cm, "pair_cm": pair_cm}


@prop("remark-local")
def p_remark_local(ctx):
    """I = m and a unique nonzero Ext^e: depth N = depth Ext^e + e."""
    one = ctx.single
    if not ctx.is_m or one is None or one[1] != "exact":
        raise Skip("needs I = m and a unique nonzero Ext")
    e = one[0]
    dN = ctx.grade_of(ctx.N, "N")
    dE = grade_via_ext(ctx.I, ctx.ext_module(e)).plus(e)
    return bool(dN.eq(dE)), {"depth_N": str(dN), "depth_ext+e": str(dE)}


@prop("strategy-agreement")
def p_agreement(ctx):
    rep = ctx.report
    exact = {k: v for k, v in rep.strategies.items()
             if v.is_exact and v.certificate.get("exact", True)}
    if len(exact) < 2:
        raise Skip("fewer than two exact strategies")
    vals = list(exact.values())
    return all(v.eq(vals[0]) for v in vals), {k: str(v) for k, v in exact.items()}


@prop("cf-ii")
def p_cf_ii(ctx):
    """I = m: dim Tor_h(M, K^{cd N})_{-d} = dim H^{cd N + h}_m(M, N)_d on a window."""
    rep = ctx.report
    if not ctx.is_m or rep.h is None or rep.h.kind != "finite":
        raise Skip("needs I = m and finite h")
    cdN = ctx.cd_of(ctx.N, "N")
    if cdN.kind != "finite":
        raise Skip("cd N not finite")
    c, h = cdN.value, rep.h.value
    K = deficiency(c, ctx.N).over_ring
    window = ctx.window([ctx.M, ctx.N, K])
    if ctx.glc_dim(c + h, window[0]) is None:
        raise Skip("no exact route for H(M, N) dims")
    res = ctx.res
    bad = []
    for d in window:
        a = tor_dim(h, ctx.M, K, ctx.ring.deg_neg(d), res)
        b = ctx.glc_dim(c + h, d)
        if a != b:
            bad.append((d, a, b))
    return not bad, {"c": c, "h": h, "mismatches": bad[:5], "window_size": len(window)}


@prop("cf-iii")
def p_cf_iii(ctx):
    """depth_I N = 0 or >= max(1, h): H^t_I(M,N) and Hom(M, H^t_I(N)) have equal dims."""
    rep = ctx.report
    t = ctx.grade_of(ctx.N, "N")
    if t.kind != "finite":
        raise Skip("depth N not finite")
    t = t.value
    h = rep.h
    if not (t == 0 or (h is not None and h.kind == "finite" and t >= max(1, h.value))):
        raise Skip("depth condition not met")
    window = ctx.window([ctx.M, ctx.N])
    if ctx.glc_dim(t, window[0]) is None:
        raise Skip("no exact route for H(M, N) dims")
    bad = []
    if ctx.is_m:
        K = deficiency(t, ctx.N).over_ring
        T = ctx.M.tensor(K)
        for d in window:
            a, b = T.hilbert_dim(ctx.ring.deg_neg(d)), ctx.glc_dim(t, d)
            if a != b:
                bad.append((d, a, b))
    elif t == 0:
        H = dual(ctx.M, torsion_submodule(ctx.I, ctx.N))
        for d in window:
            a, b = H.hilbert_dim(d), ctx.glc_dim(0, d)
            if a != b:
                bad.append((d, a, b))
    else:
        raise Skip("depth > 0 needs I = m")
    return not bad, {"t": t, "mismatches": bad[:5]}


@prop("nice-appl")
def p_nice_appl(ctx):
    """(C, C) with C semidualizing: depth and cd of the pair equal those of R."""
    e = ctx.entry
    if e.names[0] != e.names[1] or not ctx.semidualizing(ctx.M, "M"):
        raise Skip("pair is not (C, C) with C semidualizing")
    rep = ctx.report
    R = GradedModule.free(ctx.ring)
    dR = grade_via_ext(ctx.I, R)
    cR = cd_support(ctx.I, R, ctx.box(R)).value
    ok = rep.depth.eq(dR) and rep.cd.value.eq(cR)
    return bool(ok), {"depth_pair": str(rep.depth), "depth_R": str(dR),
                      "cd_pair": str(rep.cd.value), "cd_R": str(cR)}


@prop("reflexive-cd")
def p_reflexive(ctx):
    """I = m, C semidualizing, M totally C-reflexive: cd(M, C) = dim M = cd(M^C, C)."""
    if not ctx.is_m or not ctx.semidualizing(ctx.N, "N"):
        raise Skip("needs I = m and semidualizing N")
    cap = ctx.caps["semidualizing"]
    if not is_totally_C_reflexive(ctx.M, ctx.N, cap):
        raise Skip("M is not totally C-reflexive")
    MC = dual(ctx.M, ctx.N)
    c1 = ctx.report.cd.value
    c2 = cd_pair(ctx.I, MC, ctx.N).cd.value
    dM = ctx.M.dim()
    ok = c1.eq(ExtendedNat.finite(dM)) and c2.eq(ExtendedNat.finite(dM))
    return bool(ok), {"cd(M,C)": str(c1), "cd(M^C,C)": str(c2), "dim M": dM}


@prop("suppcd")
def p_suppcd(ctx):
    """Supp N inside Supp M implies cd_I N <= cd_I M."""
    annN = ctx.N.annihilator()
    annM = ctx.M.annihilator()
    if ctx.N.is_zero() or not all(radical_contains(annN, f) for f in annM.generators):
        raise Skip("Supp N not inside Supp M")
    a, b = ctx.cd_of(ctx.N, "N"), ctx.cd_of(ctx.M, "M")
    return _le(a, b, "suppcd"), {"cd_N": str(a), "cd_M": str(b)}


@prop("grothendieck")
def p_grothendieck(ctx):
    """grade_I N <= cd_I N <= dim N."""
    g, c = ctx.grade_of(ctx.N, "N"), ctx.cd_of(ctx.N, "N")
    if ctx.N.is_zero():
        raise Skip("N = 0")
    if g.kind == "infinite":
        return c.kind in ("neg_infinite", "finite") and (c.kind == "neg_infinite" or c.value == 0), \
            {"grade": str(g), "cd": str(c)}
    ok = _le(g, c, "grothendieck") and _le(c, ExtendedNat.finite(ctx.N.dim()), "grothendieck")
    return ok, {"grade": str(g), "cd": str(c), "dim": ctx.N.dim()}


@prop("grade-routes")
def p_grade_routes(ctx):
    """grade via Ext = grade via Koszul homology, on N and on M."""
    out = {}
    ok = True
    for key, X in (("N", ctx.N), ("M", ctx.M)):
        a = ctx.grade_of(X, key)
        b = koszul_grade(ctx.I.generators, X)
        out[key] = (str(a), str(b))
        ok = ok and bool(a.eq(b))
    return ok, out


@prop("cech-duality")
def p_cech_duality(ctx):
    """Fine grading, I = m: Cech dims at d equal deficiency dims at -d on the box."""
    if not ctx.is_m or not ctx.ring.fine:
        raise Skip("needs I = m and the fine grading")
    bad = []
    cells = 0
    for key, X in (("N", ctx.N), ("M", ctx.M)):
        if X.is_zero():
            continue
        box = ctx.box(X)
        for i in range(ctx.ring.n + 1):
            table = cech_cohomology(ctx.I, X, i, box)
            K = deficiency(i, X)
            for d in _box_degrees(box):
                cells += 1
                a = table.get(i, d)
                b = 0 if K.is_zero() else K.lc_dim(d)
                if a != b:
                    bad.append((key, i, d, a, b))
    return not bad, {"cells": cells, "mismatches": bad[:5]}


@prop("hilbert-oracle")
def p_hilbert(ctx):
    """Linear-algebra dims agree with GB standard-monomial counts."""
    bad = []
    window = ctx.window([ctx.M, ctx.N])
    for key, X in (("M", ctx.M), ("N", ctx.N)):
        for d in window:
            a, b = X.hilbert_dim(d), X.gb_dim(d)
            if a != b:
                bad.append((key, d, a, b))
    return not bad, {"window_size": len(window), "mismatches": bad[:5]}


@prop("cm-detection")
def p_cm_detection(ctx):
    """I = m: N relative CM (deficiency test) iff depth N = dim N."""
    if not ctx.is_m or ctx.N.is_zero():
        raise Skip("needs I = m and N != 0")
    cm = is_relative_cm_m(ctx.N)
    g = ctx.grade_of(ctx.N, "N")
    dd = depth_via_deficiency(ctx.N)
    ok = (cm == bool(g.eq(ExtendedNat.finite(ctx.N.dim())))) and bool(g.eq(dd))
    return ok, {"cm": cm, "grade": str(g), "depth_deficiency": str(dd), "dim": ctx.N.dim()}


# -- expectations ------------------------------------------------------------------------------

def pair_value(ctx, prop_name):
    rep = ctx.report
    if prop_name == "depth":
        return fmt(rep.depth)
    if prop_name == "cd":
        return fmt(rep.cd.value)
    if prop_name == "e":
        return fmt(rep.e)
    if prop_name == "h":
        return fmt(rep.h) if rep.h is not None else "none"
    if prop_name == "verdict":
        return fmt(rep.verdict)
    if prop_name == "huneke":
        return fmt(huneke_check(ctx.I, ctx.M, ctx.N).ass)
    if prop_name == "cd_n":
        return fmt(ctx.cd_of(ctx.N, "N"))
    if prop_name == "depth_n":
        return fmt(ctx.grade_of(ctx.N, "N"))
    raise KeyError(prop_name)


def object_value(env, target, prop_name, caps):
    if target in env.modules:
        M = env.modules[target]
        if prop_name == "semidualizing":
            return fmt(bool(is_semidualizing(M, caps["semidualizing"])))
        if prop_name == "pd":
            return fmt(pd(M, caps.get("resolution")))
        if prop_name == "dim":
            return str(M.dim())
        if prop_name == "ar":
            return norm(ar_certificate(M).verdict)
        if prop_name == "ass":
            return fmt(ass_monomial(M))
        if prop_name == "free":
            return fmt(M.is_free())
        if prop_name == "ngens":
            return str(M.minimal_presentation().rank)
        if prop_name == "betti":
            res = free_resolution(M, caps.get("resolution"))
            return fmt_list(res.betti)
    if target in env.ideals and prop_name == "cci":
        return fmt(is_cci(env.ideals[target]))
    raise KeyError(f"{target}.{prop_name}")


def fmt_list(xs):
    return "[" + ",".join(str(x) for x in xs) + "]"


# -- suite ------------------------------------------------------------------------------------

@dataclass
class SuiteReport:
    entries: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    caps: dict = field(default_factory=dict)
    cache_hits: int = 0

    @property
    def failures(self):
        return [(e, p) for e, props in self.entries.items() for p, o in props.items()
                if o["status"] == "fail"]

    @property
    def ok(self):
        return not self.failures

    def counts(self):
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for props in self.entries.values():
            for o in props.values():
                out[o["status"]] += 1
        return out

    def to_json(self):
        return {"entries": self.entries, "timing": self.timing, "caps": self.caps,
                "cache_hits": self.cache_hits, "counts": self.counts(), "ok": self.ok}

    def to_markdown(self):
        lines = ["| entry | property | status | details |", "|---|---|---|---|"]
        for e in sorted(self.entries):
            for p in sorted(self.entries[e]):
                o = self.entries[e][p]
                det = o["details"].get("reason", "") if o["status"] == "skipped" else ""
                if o["status"] == "fail":
                    det = str(o["details"])[:200]
                lines.append(f"| {e} | {p} | {o['status']} | {det} |")
        c = self.counts()
        lines.append("")
        lines.append(f"pass {c['pass']}, fail {c['fail']}, skipped {c['skipped']}")
        return "\n".join(lines)


def _run_property(name, fn, ctx, repro):
    try:
        ok, details = fn(ctx)
        out = Outcome("pass" if ok else "fail", details)
    except Skip as s:
        out = Outcome("skipped", {"reason": str(s)})
    except CmPairsError as exc:
        out = Outcome("fail", {"error": f"{type(exc).__name__}: {exc}"})
    if out.status == "fail":
        out.details["repro"] = repro
    return out.to_json()


_ENVS = {}


def _environment(source):
    # one evaluated environment per document and process, so entries share module caches
    if source not in _ENVS:
        _ENVS[source] = load(source)[1]
    return _ENVS[source]


def evaluate_entry(source, path, entry_name, properties, caps):
    """Evaluate one pair (or one object expectation group) of one document."""
    env = _environment(source)
    results = {}
    if entry_name in env.pairs:
        entry = env.pairs[entry_name]
        ctx = Context(entry, caps)
        for name in properties:
            repro = f"cmpairs verify -f {path} --entry {entry_name} --property {name}"
            results[name] = _run_property(name, PROPERTIES[name], ctx, repro)
        for x in [x for x in env.expectations if x.target == entry_name]:
            key = f"expect:{x.prop}"
            try:
                got = pair_value(ctx, x.prop)
                st = "pass" if got == norm(x.value) else "fail"
                results[key] = Outcome(st, {"expected": x.value, "computed": got, "tag": x.tag}).to_json()
            except (KeyError, CmPairsError) as exc:
                results[key] = Outcome("fail", {"expected": x.value, "error": str(exc), "tag": x.tag}).to_json()
    else:
        for x in env.expectations:
            if x.target != entry_name:
                continue
            key = f"expect:{x.prop}"
            try:
                got = object_value(env, x.target, x.prop, caps)
                st = "pass" if got == norm(x.value) else "fail"
                results[key] = Outcome(st, {"expected": x.value, "computed": got, "tag": x.tag}).to_json()
            except (KeyError, CmPairsError) as exc:
                results[key] = Outcome("fail", {"expected": x.value, "error": str(exc), "tag": x.tag}).to_json()
    return results


def collect(paths):
    """[(path, source)] for every .cm file under the given files/directories."""
    out = []
    for p in paths:
        p = Path(p)
        files = sorted(p.rglob("*.cm")) if p.is_dir() else [p]
        for f in files:
            out.append((str(f), f.read_text()))
    return out


def _tasks(sources):
    tasks = []
    for path, text in sources:
        try:
            _, env = load(text)
        except DslError as exc:
            raise CorpusParseError(f"{path}: {exc}", exc.line, exc.column) from exc
        stem = Path(path).stem
        for name in env.pairs:
            tasks.append((f"{stem}:{name}", path, text, name))
        targets = sorted({x.target for x in env.expectations if x.target not in env.pairs})
        for t in targets:
            tasks.append((f"{stem}:{t}", path, text, t))
    return tasks


def run_suite(paths=None, properties=None, caps=None, workers=1, sources=None, entries=None):
    """Evaluate all registered properties over the corpus; returns a SuiteReport."""
    caps = dict(DEFAULT_CAPS, **(caps or {}))
    props = [p for p in (properties or sorted(PROPERTIES)) if p in PROPERTIES]
    sources = sources if sources is not None else collect(paths or [])
    tasks = _tasks(sources)
    if entries:
        tasks = [t for t in tasks if t[3] in entries or t[0] in entries]
    report = SuiteReport(caps=caps)
    t0 = time.perf_counter()
    if workers and workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = {key: pool.submit(evaluate_entry, text, path, name, props, caps)
                    for key, path, text, name in tasks}
            for key in sorted(futs):
                report.entries[key] = futs[key].result()
    else:
        for key, path, text, name in tasks:
            t1 = time.perf_counter()
            report.entries[key] = evaluate_entry(text, path, name, props, caps)
            report.timing[key] = round(time.perf_counter() - t1, 3)
    report.timing["total"] = round(time.perf_counter() - t0, 3)
    report.entries = dict(sorted(report.entries.items()))
    from . import cache
    if cache.active() is not None:
        report.cache_hits = cache.active().hits
    return report


# -- gap search --------------------------------------------------------------------------------

def search_gap(sources, single_ext_only=False, log=None):
    """Pairs (M, N) from a family with certified cd_I N < cd_I(M, N) < infinity.

    The family is every ordered pair of modules over the same ring, for every
    ideal declared in the given documents. ``single_ext_only`` restricts to
    pairs with exactly one nonzero Ext^e(M, N); ``log`` (a list) receives every
    comparison made.
    """
    found = []
    for path, text in sources:
        _, env = load(text)
        for iname, I in sorted(env.ideals.items()):
            mods = [(k, M) for k, M in sorted(env.modules.items()) if M.ring == I.ring]
            for (a, M), (b, N) in product(mods, mods):
                if N.is_zero() or M.is_zero():
                    continue
                try:
                    if single_ext_only:
                        res = free_resolution(M, M.ring.n + 4)
                        one = single_ext(M, N, res)
                        if one is None or one[1] != "exact":
                            continue
                    rep = cd_pair(I, M, N)
                    cdN = cd_support(I, N).value
                except CmPairsError:
                    continue
                c = rep.cd.value
                gap = (c.kind == "finite" and c.certificate.get("exact", True)
                       and cdN.kind == "finite" and cdN.value < c.value)
                if log is not None:
                    log.append({"file": path, "ideal": iname, "M": a, "N": b, "cd_N": str(cdN),
                                "cd_pair": str(c), "gap": gap})
                if gap:
                    found.append({"file": path, "ideal": iname, "M": a, "N": b,
                                  "cd_N": cdN.value, "cd_pair": c.value, "strategy": rep.strategy,
                                  "agreement": rep.agreement})
    return found
