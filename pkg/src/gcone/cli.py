"""``gcone`` command line.

Structured input is read from stdin (or ``--input FILE``) as a JSON
document. Exit codes: 0 for success or a true answer, 1 for a mathematical
negative, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize as ser
from .catalog import (
    GROUPS,
    hodge_identity,
    prime_overlattices,
    rigid_cy_pair,
    verify_paper,
)
from .cayley import (
    CayleyInput,
    cayley_cone,
    find_splittings,
    schimmrigk_cayley,
    schimmrigk_weights,
    weighted_projective_cone,
)
from .cone import Cone, LatticePolytope, dual_cone, lattice_points
from .errors import GconeError
from .gorenstein import (
    Status,
    gorenstein_status,
    graded_point_count,
    is_reflexive_polytope,
    reflexive_data,
    support_polytope,
)
from .nefpart import (
    check_pairing,
    dual_nef_partition,
    make_nef_partition,
    nabla_polytopes,
    nef_cayley_cones,
    verify_cone_duality,
)

OK, FALSE, INPUT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _vec(v) -> list:
    return [ser.number(x) for x in v]


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------

def _read(args) -> ser.Document:
    if args.input:
        with open(args.input, "rb") as fh:
            data = fh.read()
    else:
        data = sys.stdin.buffer.read()
    return ser.parse(data)


def _expect(doc: ser.Document, *kinds):
    if doc.kind not in kinds:
        raise UsageError(f"expected a {' or '.join(kinds)} document, got {doc.kind}")
    return doc.payload


def _read_cone(args) -> Cone:
    return _expect(_read(args), "cone")


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from None


def _int_range(text: str) -> list[int]:
    """``"3"`` or ``"1..10"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"expected an integer or a range a..b, got {text!r}") from None


# ---------------------------------------------------------------------------
# commands; each returns (exit code, JSON-able result, text)
# ---------------------------------------------------------------------------

def cmd_dual_cone(args):
    c = dual_cone(_read_cone(args))
    return OK, ser.to_json(c), ser.dumps(c).rstrip()


def cmd_is_gorenstein(args):
    c = _read_cone(args)
    if not c.is_pointed or not c.is_full_dimensional:
        why = "not pointed" if not c.is_pointed else "not full-dimensional"
        return FALSE, {"gorenstein": False, "reason": why}, f"not gorenstein ({why})"
    status, n = gorenstein_status(c)
    result = {"gorenstein": status is Status.GORENSTEIN, "status": status.value}
    if n is not None:
        result["n_sigma"] = _vec(n)
    if status is Status.GORENSTEIN:
        return OK, result, f"gorenstein, n_sigma = {_fmt(n)}"
    text = f"not gorenstein ({status.value})"
    if n is not None:
        text += f", candidate n = {_fmt(n)}"
    return FALSE, result, text


def cmd_is_reflexive(args):
    doc = _read(args)
    obj = _expect(doc, "cone", "polytope")
    if isinstance(obj, LatticePolytope):
        ok = obj.is_full_dimensional and is_reflexive_polytope(obj)
        return (OK if ok else FALSE, {"reflexive": ok},
                "reflexive polytope" if ok else "not a reflexive polytope")
    if not obj.is_pointed or not obj.is_full_dimensional:
        return FALSE, {"reflexive": False}, "not reflexive"
    data = reflexive_data(obj)
    if data is None:
        return FALSE, {"reflexive": False}, "not reflexive"
    result = {"reflexive": True, "index": data.index, "n_sigma": _vec(data.n_sigma),
              "m_sigma_check": _vec(data.m_sigma_check)}
    return OK, result, f"reflexive, index {data.index}"


def _gorenstein_or_false(c: Cone):
    if not c.is_pointed or not c.is_full_dimensional:
        return "cone is not pointed and full-dimensional"
    status, _ = gorenstein_status(c)
    if status is not Status.GORENSTEIN:
        return f"cone is not gorenstein ({status.value})"
    return None


def cmd_support(args):
    c = _read_cone(args)
    why = _gorenstein_or_false(c)
    if why:
        return FALSE, {"error": why}, why
    P = support_polytope(c)
    return OK, ser.to_json(P), ser.dumps(P).rstrip()


def cmd_graded_count(args):
    c = _read_cone(args)
    if args.degree < 0:
        raise UsageError("--degree must be nonnegative")
    why = _gorenstein_or_false(c)
    if why:
        return FALSE, {"error": why}, why
    k = graded_point_count(c, args.degree)
    return OK, {"degree": args.degree, "count": k}, str(k)


def _cone_report(c: Cone) -> tuple[dict, str]:
    data = reflexive_data(c)
    result = {"cone": ser.to_json(c), "reflexive": data is not None}
    lines = [str(c)]
    if data is not None:
        result["index"] = data.index
        lines.append(f"reflexive, index {data.index}")
    else:
        lines.append("not reflexive")
    return result, "\n".join(lines)


def cmd_cayley(args):
    with open(args.polytopes, "rb") as fh:
        raw = fh.read()
    try:
        doc = json.loads(raw, parse_float=ser._reject_float)
    except json.JSONDecodeError as exc:
        raise ser.DocumentError(f"malformed JSON: {exc}", "/") from None
    items = doc.get("polytopes") if isinstance(doc, dict) else doc
    if not isinstance(items, list) or not items:
        raise ser.DocumentError("expected a nonempty array of polytopes", "/polytopes")
    polys = [ser.parse_polytope(p, f"/polytopes/{i}") for i, p in enumerate(items)]
    c = cayley_cone(CayleyInput(polys[0].lattice, tuple(polys)))
    result, text = _cone_report(c)
    return OK, result, text


def cmd_wp_cone(args):
    weights = _int_list(args.weights, "--weights")
    c, _ = weighted_projective_cone(weights, args.w0)
    result, text = _cone_report(c)
    return OK, result, text


def cmd_split_check(args):
    c = _read_cone(args)
    if args.parts < 1:
        raise UsageError("--parts must be positive")
    if not c.is_pointed or not c.is_full_dimensional or reflexive_data(c) is None:
        return FALSE, {"split": False, "reason": "not reflexive"}, "not reflexive"
    found = find_splittings(c, args.parts)
    entries = [{
        "parts": [[a + 1 for a in p] for p in s.parts],
        "n_vectors": [_vec(n) for n in s.n_vectors],
        "translations": [_vec(w) for w in s.translations],
        "slices": [[_vec(v) for v in P.vertices] for P in s.slice_polytopes],
    } for s in found]
    lines = [f"{len(found)} splitting(s) into {args.parts} parts"]
    for s in found:
        blocks = " | ".join(",".join(str(a + 1) for a in p) for p in s.parts)
        lines.append(f"  rays {blocks}; n = " + ", ".join(_fmt(n) for n in s.n_vectors))
    return (OK if found else FALSE), {"split": bool(found), "splittings": entries}, "\n".join(lines)


def cmd_nef_dual(args):
    if args.delta:
        with open(args.delta, "rb") as fh:
            doc = ser.parse(fh.read())
        delta = _expect(doc, "polytope")
        if not args.partition:
            raise UsageError("--partition is required with --delta")
        blocks = ser.parse_partition(args.partition, "/partition")
        np_ = make_nef_partition(delta, blocks)
    else:
        np_ = _expect(_read(args), "nef_partition")
    dual = dual_nef_partition(np_)
    sigma, sigma_star = nef_cayley_cones(np_)
    pairing, duality = check_pairing(np_, dual), verify_cone_duality(np_)
    result = {
        "parts": [[_vec(v) for v in P.vertices] for P in np_.part_polytopes],
        "nablas": [[_vec(v) for v in P.vertices] for P in nabla_polytopes(np_)],
        "dual": ser.to_json(dual),
        "cayley_cone": ser.to_json(sigma),
        "dual_cayley_cone": ser.to_json(sigma_star),
        "pairing": pairing,
        "cone_duality": duality,
    }
    lines = []
    for i, (P, Q) in enumerate(zip(np_.part_polytopes, nabla_polytopes(np_)), 1):
        lines.append(f"Delta_{i} = {P}")
        lines.append(f"nabla_{i} = {Q}")
    lines.append(f"pairing inequalities: {'hold' if pairing else 'fail'}")
    lines.append(f"Cayley cones dual: {'yes' if duality else 'no'}")
    return (OK if pairing and duality else FALSE), result, "\n".join(lines)


def cmd_lattice_points(args):
    P = _expect(_read(args), "polytope")
    pts = lattice_points(P)
    return OK, {"count": len(pts), "points": [_vec(p) for p in pts]}, \
        "\n".join([str(len(pts))] + [_fmt(p) for p in pts])


def cmd_schimmrigk(args):
    if args.k < 1 or args.l < 1:
        raise UsageError("--k and --l must be positive")
    c = schimmrigk_cayley(args.k, args.l)
    weights, w0 = schimmrigk_weights(args.k, args.l)
    result = {"k": args.k, "l": args.l, "index": 2, "rays": len(c.rays),
              "degree_1_count": graded_point_count(c, 1),
              "weights": weights, "w0": w0}
    text = [f"reflexive, index 2, {len(c.rays)} rays",
            f"degree-1 lattice points: {result['degree_1_count']}"]
    try:
        wp, _ = weighted_projective_cone(weights, w0)
    except GconeError as exc:
        text.append(f"weighted model P{tuple(weights)} of degree {w0}: {exc}")
        result["weighted_model"] = None
    else:
        count = graded_point_count(wp, 1)
        result["weighted_model"] = {"rays": len(wp.rays), "degree_1_count": count}
        text.append(f"weighted model P{tuple(weights)} of degree {w0}: "
                    f"{len(wp.rays)} rays, {count} degree-1 points")
    return OK, result, "\n".join(text)


def cmd_catalog_rigid_cy(args):
    if args.d < 1:
        raise UsageError("--d must be positive")
    ex = rigid_cy_pair(args.d)
    data = reflexive_data(ex.sigma_M)
    over = prime_overlattices(args.d)
    result = {
        "d": args.d,
        "index": data.index,
        "n_sigma": _vec(data.n_sigma),
        "m_sigma_check": _vec(data.m_sigma_check),
        "lattice_M": ser.lattice_json(ex.lattice_M),
        "lattice_N": ser.lattice_json(ex.lattice_N),
        "overlattices": [{"generator": _vec(o.generator), "index": o.index,
                          "cyclic_invariant": o.cyclic_invariant} for o in over],
    }
    text = [f"d = {args.d}: orthants over M-bar and N-bar are dual, reflexive of index "
            f"{data.index}",
            f"n_sigma = {_fmt(data.n_sigma)}",
            f"m_sigma_check = {_fmt(data.m_sigma_check)}"]
    for o in over:
        tag = "cyclic-invariant" if o.cyclic_invariant else "not invariant"
        text.append(f"index-{o.index} overlattice via {_fmt(o.generator)} ({tag})")
    return OK, result, "\n".join(text)


def cmd_catalog_hodge(args):
    rows, lines, ok = [], [], True
    for d in _int_range(args.d):
        h = hodge_identity(d)
        ok &= h.equal
        rows.append({"d": d, "lhs": h.lhs, "rhs1": h.rhs1, "rhs2": h.rhs2, "equal": h.equal})
        lines.append(f"d={d}: {h.lhs} {'=' if h.equal else '!='} {h.rhs1} = {h.rhs2}")
    return (OK if ok else FALSE), rows, "\n".join(lines)


def cmd_verify_paper(args):
    try:
        report = verify_paper(args.filter, args.mutate or (), args.jobs)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if not report:
        raise UsageError(f"no fixture matches {args.filter!r}; groups: {', '.join(GROUPS)}")
    ok = all(e["status"] == "pass" for e in report)
    width = max(len(e["fixture"]) for e in report)
    lines = [f"{e['status'].upper():4}  {e['fixture']:<{width}}  {e['detail']}" for e in report]
    passed = sum(e["status"] == "pass" for e in report)
    lines.append(f"{passed}/{len(report)} fixtures pass")
    return (OK if ok else FALSE), report, "\n".join(lines)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="write JSON instead of text")
    stdin = argparse.ArgumentParser(add_help=False)
    stdin.add_argument("--input", metavar="FILE", help="read the document from FILE, not stdin")

    p = argparse.ArgumentParser(prog="gcone", parents=[common],
                                description="Exact computations with Gorenstein cones.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help, *, reads=True):
        sp = sub.add_parser(name, help=help, parents=[common] + ([stdin] if reads else []))
        sp.set_defaults(func=fn)
        return sp

    add("dual-cone", cmd_dual_cone, "dual cone of a cone document")
    add("is-gorenstein", cmd_is_gorenstein, "Gorenstein test with certificate")
    add("is-reflexive", cmd_is_reflexive, "reflexivity and index of a cone or polytope")
    add("support", cmd_support, "degree-one support polytope")
    add("graded-count", cmd_graded_count, "lattice points of a given degree") \
        .add_argument("--degree", type=int, required=True)
    add("cayley", cmd_cayley, "Cayley cone of a list of polytopes", reads=False) \
        .add_argument("--polytopes", required=True, metavar="FILE")
    sp = add("wp-cone", cmd_wp_cone, "weighted projective cone", reads=False)
    sp.add_argument("--weights", required=True)
    sp.add_argument("--w0", type=int, required=True)
    add("split-check", cmd_split_check, "all splittings into r parts") \
        .add_argument("--parts", type=int, required=True)
    sp = add("nef-dual", cmd_nef_dual, "dual nef-partition and its certificates")
    sp.add_argument("--delta", metavar="FILE")
    sp.add_argument("--partition", help="1-based blocks over the sorted polar vertices, e.g. 1,2/3,4")
    add("lattice-points", cmd_lattice_points, "lattice points of a polytope")
    sp = add("schimmrigk", cmd_schimmrigk, "the two-hypersurface Cayley family", reads=False)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)

    cat = sub.add_parser("catalog", help="named examples", parents=[common])
    csub = cat.add_subparsers(dest="entry", metavar="ENTRY")
    csub.required = True
    sp = csub.add_parser("rigid-cy", parents=[common], help="the rigid cubic family")
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_catalog_rigid_cy)
    sp = csub.add_parser("hodge-identity", parents=[common], help="divisor count identity")
    sp.add_argument("--d", required=True, help="an integer or a range a..b")
    sp.set_defaults(func=cmd_catalog_hodge)

    sp = add("verify-paper", cmd_verify_paper, "run every fixture", reads=False)
    sp.add_argument("--filter", help=f"a group ({', '.join(GROUPS)}) or a name substring")
    sp.add_argument("--mutate", action="append", metavar="FIXTURE",
                    help="corrupt this fixture before checking it (repeatable)")
    sp.add_argument("--jobs", type=int, default=1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, result, text = args.func(args)
    except (GconeError, UsageError, OSError) as exc:
        msg = str(exc)
        if args.json:
            err = {"error": msg}
            if isinstance(exc, ser.DocumentError):
                err["pointer"] = exc.pointer or "/"
            print(json.dumps(err, sort_keys=True))
        else:
            print(f"gcone: error: {msg}", file=sys.stderr)
        return INPUT_ERROR
    if args.json:
        print(json.dumps(result, indent=2, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
