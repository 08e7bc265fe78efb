"""Command-line front end.

Deterministic output; exit code 0 on success, 2 for honest Unknown or
Inconclusive results, 1 on errors.
"""
from __future__ import annotations

import json
import sys
from importlib import resources

import click

from . import arf, k2diff, kinv, upsilon as ups
from .groups import classes as gcl
from .groups import core as gcore
from .homology import (algebras as halg, chains as hch, operations as hops,
                       morita as hmor)
from .rings.base import PolyRing


EXIT_UNKNOWN = 2


def load_group(spec):
    if spec.startswith("builtin:"):
        return gcore.builtin_group(spec.split(":", 1)[1])
    with open(spec) as f:
        return gcore.group_from_json(json.load(f))


RINGS = {
    "plane": k2diff.plane_ring,
    "zxy": lambda: PolyRing(["X", "Y"], coeff="Z"),
    "f2xy-inv": lambda: PolyRing(["X", "Y"], coeff="F2", laurent=True,
                                 involution="inverse"),
}


@click.group()
def main():
    """Exact Arf-type invariants over rings with anti-structure."""


@main.command("classes")
@click.argument("group")
@click.option("--window", type=int, default=None)
@click.option("--method", type=click.Choice(["auto", "window"]), default="auto")
@click.option("--json", "as_json", is_flag=True)
def classes_cmd(group, window, method, as_json):
    """cl(G): the classes of g ~ g^-1 ~ hgh^-1 ~ g^2."""
    G = load_group(group)
    cls = gcl.cl_classes(G, window=window, method=method)
    approx = any(c.approximate for c in cls)
    if as_json:
        click.echo(json.dumps({
            "classes": [c.label() for c in cls],
            "approximate": approx}))
    else:
        click.echo(", ".join(c.label() for c in cls))
        if approx:
            click.echo("(window approximation: classes may merge at larger windows)")
    sys.exit(EXIT_UNKNOWN if approx else 0)


@main.command("involutions")
@click.argument("group")
@click.option("--window", type=int, default=None)
def involutions_cmd(group, window):
    G = load_group(group)
    out = G.involutions(window=window)
    click.echo(", ".join(G.format_element(g) for g in out))


@main.command("arf-eval")
@click.argument("expr")
@click.option("--invariant", type=click.Choice(["omega", "omega1", "total", "upsilon"]),
              required=True)
@click.option("--group", "group_spec", default=None)
@click.option("--ring", "ring_spec", default=None)
@click.option("--reduced", is_flag=True, help="parse <<a,b>> reduced generators")
@click.option("--json", "as_json", is_flag=True)
def arf_eval_cmd(expr, invariant, group_spec, ring_spec, reduced, as_json):
    """Evaluate an invariant on an expression "<w1, w2> + <w3, w4>"."""
    if group_spec:
        ctx = load_group(group_spec)
        flavor = arf.GROUP
    elif ring_spec:
        ctx = RINGS[ring_spec]()
        flavor = arf.REDUCED if reduced else arf.RING
    else:
        raise click.UsageError("one of --group/--ring is required")
    e = arf.parse_expression(flavor, ctx, expr)
    if invariant == "omega":
        out = kinv.omega(e).display()
    elif invariant == "omega1":
        out = kinv.omega1(e).display()
    elif invariant == "total":
        k, q = k2diff.total_invariant(e)
        out = f"({k.display()}, {q.display()})"
    else:
        try:
            out = ups.upsilon_eval(e).display()
        except ups.UpsilonUnknown as exc:
            click.echo(f"Unknown: {exc}")
            sys.exit(EXIT_UNKNOWN)
    click.echo(json.dumps({"value": out}) if as_json else out)


@main.command("derive-check")
@click.argument("group")
@click.argument("derivation", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
def derive_check_cmd(group, derivation, as_json):
    """Verify a derivation file {"start": ..., "steps": [...], "target": ...}."""
    G = load_group(group)
    with open(derivation) as f:
        data = json.load(f)
    ok, transcript = _run_derivation(G, data)
    if as_json:
        click.echo(json.dumps({"ok": ok, "transcript": transcript}))
    else:
        for line in transcript:
            click.echo(line)
        click.echo("PASS" if ok else "FAIL")
    sys.exit(0 if ok else 1)


def _run_derivation(G, data):
    start = arf.parse_expression(arf.GROUP, G, data["start"])
    target = arf.parse_expression(arf.GROUP, G, data["target"])
    steps = arf.steps_from_json(data["steps"])
    return arf.check_derivation(start, steps, target)


@main.command("distinguish")
@click.argument("group")
@click.argument("expr1")
@click.argument("expr2")
@click.option("--json", "as_json", is_flag=True)
def distinguish_cmd(group, expr1, expr2, as_json):
    """Exact Upsilon comparison of two expressions."""
    G = load_group(group)
    e1 = arf.parse_expression(arf.GROUP, G, expr1)
    e2 = arf.parse_expression(arf.GROUP, G, expr2)
    r = ups.upsilon_distinguish(e1, e2)
    if as_json:
        click.echo(json.dumps({"verdict": r.verdict,
                               "transcript": r.transcript}))
    else:
        click.echo(r.verdict)
        for line in r.transcript:
            click.echo("  " + line)
    sys.exit(EXIT_UNKNOWN if r.verdict == "Unknown" else 0)


@main.command("homology")
@click.argument("which", type=click.Choice(["H0", "H1", "HC0", "HC1", "HQ1"]))
@click.option("--group-algebra", "group_spec", default=None)
@click.option("--p", type=int, default=2)
@click.option("--algebra", "algebra_path", type=click.Path(exists=True), default=None)
@click.option("--json", "as_json", is_flag=True)
def homology_cmd(which, group_spec, p, algebra_path, as_json):
    """Dimension and basis of a low-degree homology group."""
    if algebra_path:
        with open(algebra_path) as f:
            A = halg.algebra_from_json(json.load(f))
    elif group_spec:
        A = halg.group_algebra(load_group(group_spec), p)
    else:
        raise click.UsageError("need --algebra or --group-algebra")
    hs = hch.homology(A, which)
    if as_json:
        click.echo(json.dumps({"which": which, "dim": hs.dim}))
    else:
        click.echo(f"{which}({A.name}): dimension {hs.dim}")


@main.command("theta")
@click.argument("which", type=click.Choice(["h0", "h1"]))
@click.option("--group-algebra", "group_spec", required=True)
@click.option("--p", type=int, default=2)
@click.option("--element", default=None, help="group word for the H0 class")
def theta_cmd(which, group_spec, p, element):
    """Apply the reduced power operation to a class."""
    G = load_group(group_spec)
    A = halg.group_algebra(G, p)
    if which == "h0":
        g = G.parse_element(element or "1")
        idx = G.elements().index(g)
        cls = hops.space(A, "H0").class_of(A.basis_vec(idx))
        out = hops.theta_p_h0(A, cls)
        click.echo(f"theta_{p}[{G.format_element(g)}] -> {A.format_vec(out.reduced())}")
    else:
        h1 = hops.space(A, "H1")
        if not h1.basis:
            click.echo("H1 = 0")
            return
        cls = h1.class_of(h1.basis[0])
        out = hops.theta_p_h1(A, cls)
        click.echo(f"theta_{p} of a basis H1 class -> HC1 vector {out.reduced()}")


@main.command("morita-check")
@click.option("--group", "group_spec", default=None,
              help="base R = F2[G]; default R = F2")
@click.option("--m", type=int, default=2)
@click.option("--levels", type=int, default=2)
def morita_check_cmd(group_spec, m, levels):
    """Verify Tr.iota = 1 and b chi + chi b = 1 - iota Tr."""
    import itertools
    R = halg.field_algebra(2) if not group_spec else \
        halg.group_algebra(load_group(group_spec), 2)
    A = halg.matrix_algebra(R, m)
    for k in range(1, levels + 1):
        for key in itertools.product(range(R.dim), repeat=k):
            assert hmor.trace_chain(A, k, hmor.iota_chain(A, k, {key: 1})) == {key: 1}
        click.echo(f"Tr.iota = 1 on R^{k}: ok")
    for k in range(1, levels + 1):
        for key in itertools.product(range(A.dim), repeat=k):
            ch = {key: 1}
            lhs = hch.boundary(A, k + 1, hmor.chi(A, k, ch))
            if k > 1:
                lhs = hch.t_add(A.p, lhs, hmor.chi(A, k - 1, hch.boundary(A, k, ch)))
            rhs = hch.t_add(A.p, ch, hch.t_neg(A.p, hmor.iota_chain(
                A, k, hmor.trace_chain(A, k, ch))))
            if lhs != rhs:
                click.echo(f"homotopy identity FAILS at level {k}")
                sys.exit(1)
        click.echo(f"b chi + chi b = 1 - iota Tr on A^{k}: ok")


# ---------------------------------------------------------------------------
# scenarios


def scenario_names():
    root = resources.files("arfkit") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_scenario(name):
    path = resources.files("arfkit") / "scenarios" / f"{name}.json"
    return json.loads(path.read_text())


@main.command("scenario")
@click.argument("name", required=False)
@click.option("--list", "list_all", is_flag=True)
@click.option("--json", "as_json", is_flag=True)
def scenario_cmd(name, list_all, as_json):
    """Run a named scenario reproducing a worked example."""
    if list_all or not name:
        for n in scenario_names():
            click.echo(n)
        return
    data = load_scenario(name)
    results = run_scenario(data)
    ok = all(r["ok"] for r in results)
    if as_json:
        click.echo(json.dumps({"name": name, "ok": ok, "checks": results}))
    else:
        click.echo(f"scenario {name}: {data.get('description', '')}")
        for r in results:
            status = "ok" if r["ok"] else "FAIL"
            click.echo(f"  [{status}] {r['label']}  {r['provenance']}")
        click.echo("PASS" if ok else "FAIL")
    sys.exit(0 if ok else 1)


def run_scenario(data):
    G = load_group(data["group"]) if "group" in data else None
    results = []
    for check in data["checks"]:
        kind = check["kind"]
        handler = _CHECKS[kind]
        ok, label = handler(G, check)
        results.append({"ok": bool(ok), "label": label,
                        "provenance": check.get("provenance", "")})
    return results


def _check_classes(G, check):
    cls = gcl.cl_classes(G, window=check.get("window"))
    got = [c.label() for c in cls]
    return got == check["expect"], f"cl(G) = {', '.join(got)}"


def _check_omega(G, check):
    e = arf.parse_expression(arf.GROUP, G, check["expr"])
    val = kinv.omega(e)
    expect = kinv.omega(arf.parse_expression(arf.GROUP, G, check["expect"]))
    return val == expect, f"omega({check['expr']}) = {val.display()}"


def _check_omega_basis(G, check):
    vals = [kinv.omega(arf.parse_expression(arf.GROUP, G, t))
            for t in check["exprs"]]
    distinct = all(not (vals[i] == vals[j])
                   for i in range(len(vals)) for j in range(i + 1, len(vals)))
    nonzero = all(not v.is_zero() for v in vals)
    return distinct and nonzero, "omega images independent"


def _check_derivation(G, check):
    ok, transcript = _run_derivation(G, check)
    return ok, f"derivation of {check['target']}: {len(check['steps'])} steps"


def _check_distinguish(G, check):
    e1 = arf.parse_expression(arf.GROUP, G, check["expr1"])
    e2 = arf.parse_expression(arf.GROUP, G, check["expr2"])
    r = ups.upsilon_distinguish(e1, e2)
    want = check["expect"]
    ok = r.verdict == want or (want == "SameImage" and r.same_image)
    return ok, f"distinguish -> {r.verdict}"


def _check_upsilon(G, check):
    e = arf.parse_expression(arf.GROUP, G, check["expr"])
    val = ups.upsilon_eval(e)
    if check.get("expect") == "zero":
        return val.is_zero(), f"Upsilon({check['expr']}) = {val.display()}"
    if "expect_pair" in check:
        z = G.parse_element(check["expect_pair"]["class_of"])
        want = ups.JValue(G)
        h = check["expect_pair"].get("element")
        want.add_insert(z, G.parse_element(h) if h else None,
                        check["expect_pair"].get("tbit", 0))
        return val == want, f"Upsilon({check['expr']}) = {val.display()}"
    return not val.is_zero(), f"Upsilon({check['expr']}) = {val.display()}"


def _check_upsilon_table(G, check):
    """Families are given by affine exponent patterns [[ci, cj, c0], ...]
    evaluated at every (i, j) in the window."""
    rng = range(-check.get("range", 3), check.get("range", 3) + 1)

    def element(pattern, i, j):
        (ax, bx, cx), (ay, by, cy), s = pattern
        return ((ax * i + bx * j + cx, ay * i + by * j + cy), s)

    ok = True
    n = 0
    for i in rng:
        for j in rng:
            for fam in check["families"]:
                g = element(fam["g"], i, j)
                h = element(fam["h"], i, j)
                val = ups.upsilon_eval(arf.ArfExpression(arf.GROUP, G, [(g, h)]))
                want = ups.JValue(G)
                z = G.mul(g, h)
                if fam.get("t"):
                    want.add_insert(z, None, 1)
                else:
                    want.add_insert(z, element(fam["image"], i, j))
                if not (val == want) or val.is_zero():
                    ok = False
                n += 1
    return ok, f"Upsilon table over {n} instances"


def _check_lc_dim(G, check):
    lc = ups.l_of_class(G, G.parse_element(check["class_of"]))
    return lc.dim == check["dim"], f"dim L([{check['class_of']}]) = {lc.dim}"


def _check_decide(G, check):
    ring = RINGS[check["ring"]]()
    e = arf.parse_expression(arf.GROUP, G, check["expr"]) if G else None
    _, q = k2diff.plane_group_invariant(e)
    verdict = "Zero" if q.is_zero() else "NonZero"
    return verdict == check["expect"], f"Omega-part of psi image: {verdict}"


def _check_homology_upsilon(G, check):
    A = halg.group_algebra(G, 2)
    cok = hops.coker_one_plus_vartheta(A)
    g = G.parse_element(check["element"])
    idx = G.elements().index(g)
    v = cok.upsilon_pair(A.basis_vec(idx), A.basis_vec(idx))
    ok = any(v) == (check["expect"] == "nonzero")
    return ok, f"homology Upsilon(<{check['element']},{check['element']}>) " \
               f"{'non' if any(v) else ''}zero"


_CHECKS = {
    "classes": _check_classes,
    "omega": _check_omega,
    "omega-basis": _check_omega_basis,
    "derivation": _check_derivation,
    "distinguish": _check_distinguish,
    "upsilon": _check_upsilon,
    "upsilon-table": _check_upsilon_table,
    "lc-dim": _check_lc_dim,
    "decide": _check_decide,
    "homology-upsilon": _check_homology_upsilon,
}


if __name__ == "__main__":
    main()
