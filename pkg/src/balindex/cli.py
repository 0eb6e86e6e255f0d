"""Command-line front end: bal, formula, oracle, certify, verify, sweep."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import balance, bruteforce, certify, graphs
from .errors import InternalError, OracleCapExceeded, ParseError
from .formats import (
    format_certificate,
    format_matrix,
    graph_matrix,
    parse_certificate,
    parse_edge_list,
    parse_matrix,
)
from .intlinalg import enumerate_minor_gcd, smith_normal_form
from .matrices import IntMatrix, Permutation, conjugate, mean_matrix, stats
from .rng import SplitMix64


def _read_input(path: str, fmt: str):
    """Returns (matrix, graph-or-None, loops-or-None)."""
    text = Path(path).read_text()
    if fmt == "auto":
        first = next(
            (ln.split("#", 1)[0].split() for ln in text.splitlines() if ln.strip()),
            [],
        )
        fmt = "edges" if len(first) == 2 else "matrix"
    if fmt == "matrix":
        return parse_matrix(text), None, None
    g, loops = parse_edge_list(text)
    return graph_matrix(g, loops), g, loops


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    for key, value in report.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            print(f"{key}:")
            for row in value:
                print("  " + " ".join(str(v) for v in row))
        elif isinstance(value, dict):
            print(f"{key}:")
            for k2, v2 in value.items():
                print(f"  {k2}: {v2}")
        else:
            print(f"{key}: {value}")


def cmd_bal(args) -> int:
    A, g, loops = _read_input(args.input, args.format)
    n = A.n
    detected = balance.classify(A)
    forced = args.force_class
    if forced and forced != "auto":
        detected = "zero-diagonal symmetric" if forced == "multigraph" else forced
    report: dict = {"n": n, "class": detected}
    b = balance.bal(A)
    report["bal"] = b

    if g is not None and loops is None:
        two_e = g.edge_count_twice()
        if two_e:
            report["lambda_min"] = two_e * b // (n * (n - 1))
        else:
            report["lambda_min"] = None
            report["note"] = "edgeless - every lambda trivially decomposable by empty combination"

    if n >= 4:
        loc = balance.local_lattice_matrix(A)
        report["phi_basis"] = [list(r) for r in loc.phi.lattice.basis]
        report["h"] = loc.triangle.h
        report["s"] = list(loc.s)
        report["lattice_generators"] = [list(r) for r in loc.lattice.generators]
        report["lattice"] = [list(r) for r in loc.lattice.basis]
        report["test_vector"] = {
            "numerators": list(loc.test_numerators),
            "denominator": loc.test_denominator,
        }
    elif n == 3:
        pred = balance.three_by_three_predicates(A)
        report["three_by_three"] = {
            "two_divides": pred.two_divides,
            "three_divides": pred.three_divides,
            "ternary_triples": list(pred.ternary_triples),
            "theta_rank": pred.theta_rank,
        }

    status = 0
    if args.oracle:
        try:
            ob = bruteforce.oracle_bal(A, args.cap)
            report["oracle"] = {"bal": ob, "agrees": ob == b}
            if ob != b:
                status = 1
        except OracleCapExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    if args.certify:
        cert = certify.build_certificate(A)
        check = certify.verify(cert, A)
        ok = (
            check.coefficient_sum == b
            and check.is_completely_symmetric
            and check.result == mean_matrix(A).scaled(b).to_int_matrix()
        )
        report["certificate"] = {
            "coefficient_sum": check.coefficient_sum,
            "support_size": check.support_size,
            "verified": ok,
            "evaluation_ab": list(check.ab) if check.ab else None,
            "terms": [[c, list(p.one_based())] for p, c in cert.canonical_terms()],
        }
        if not ok:
            status = 1
    _print_report(report, args.json)
    return status


def cmd_oracle(args) -> int:
    A, _, _ = _read_input(args.input, args.format)
    try:
        b, image, ab = bruteforce.oracle_symmetric_image(A, args.cap)
    except OracleCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"n": A.n, "bal": b, "image": [list(r) for r in image.rows], "ab": list(ab)}
    _print_report(report, args.json)
    return 0


def cmd_certify(args) -> int:
    A, _, _ = _read_input(args.input, args.format)
    cert = certify.build_certificate(A)
    check = certify.verify(cert, A)
    b = balance.bal(A)
    ok = check.coefficient_sum == b and check.is_completely_symmetric
    if args.json:
        report = {
            "n": A.n,
            "bal": b,
            "verified": ok,
            "support_size": check.support_size,
            "terms": [[c, list(p.one_based())] for p, c in cert.canonical_terms()],
        }
        print(json.dumps(report, indent=2))
    else:
        sys.stdout.write(format_certificate(cert))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    cert = parse_certificate(Path(args.certificate).read_text())
    A, _, _ = _read_input(args.input, args.format)
    check = certify.verify(cert, A)
    report = {
        "coefficient_sum": check.coefficient_sum,
        "is_completely_symmetric": check.is_completely_symmetric,
        "ab": list(check.ab) if check.ab else None,
        "support_size": check.support_size,
        "result": [list(r) for r in check.result.rows],
    }
    _print_report(report, args.json)
    return 0 if check.is_completely_symmetric else 1


def cmd_formula(args) -> int:
    kind = args.kind
    values = args.args
    report: dict = {"kind": kind}
    status = 0
    if kind == "psi":
        a, b = (int(v) for v in values)
        report["psi"] = graphs.psi(a, b)
    elif kind == "ternary-count":
        (N,) = (int(v) for v in values)
        report["count"] = balance.ternary_triple_count(N)
        if args.check:
            oracle = _ternary_count_search(N)
            report["check"] = {"search": oracle, "agrees": oracle == report["count"]}
            status = 0 if oracle == report["count"] else 1
    elif kind == "tournament":
        scores = [int(v) for v in values]
        report["bal"] = balance.bal_tournament(scores)
        if args.check:
            A = _tournament_from_scores(scores)
            if A is None:
                print("error: score sequence is not realizable", file=sys.stderr)
                return 2
            ob = bruteforce.oracle_bal(A, args.cap)
            report["check"] = {"oracle": ob, "agrees": ob == report["bal"]}
            status = 0 if ob == report["bal"] else 1
    elif kind in ("simple-graph", "wilson"):
        g, loops = parse_edge_list(Path(values[0]).read_text())
        if loops is not None:
            print("error: loops are not part of this formula", file=sys.stderr)
            return 2
        if kind == "simple-graph":
            lam, b = graphs.simple_graph_lambda_min(g)
            report["lambda_min"] = lam
            report["bal"] = b
        else:
            lam = graphs.wilson_two_isolates(g)
            two_e = g.edge_count_twice()
            report["lambda_min"] = lam
            report["bal"] = lam * g.n * (g.n - 1) // two_e
        if args.check:
            b2 = graphs.bal_multigraph(g)
            report["check"] = {"lattice_bal": b2, "agrees": b2 == report["bal"]}
            status = 0 if b2 == report["bal"] else 1
    else:
        print(f"error: unknown formula kind {kind!r}", file=sys.stderr)
        return 2
    _print_report(report, args.json)
    return status


def _ternary_count_search(N: int, box: int = 200) -> int:
    """Condition (b) by brute force: x + y + z = 1 with ax + by + cz = mean."""
    count = 0
    for a in range(1, N + 1):
        for b in range(a + 1, N + 1):
            for c in range(b + 1, N + 1):
                if (a + b + c) % 3:
                    continue
                target = (a + b + c) // 3 - c
                found = False
                for x in range(-box, box + 1):
                    num = target - (a - c) * x
                    if b != c:
                        if num % (b - c) == 0 and abs(num // (b - c)) <= box:
                            found = True
                            break
                    elif num == 0:
                        found = True
                        break
                if found:
                    count += 1
    return count


def _tournament_from_scores(scores) -> IntMatrix | None:
    """Greedy realization of a tournament score sequence.

    The highest remaining score beats its weakest unresolved opponents; the
    result is validated, so an unrealizable sequence returns None.
    """
    n = len(scores)
    remaining = {i: scores[i] for i in range(n)}
    rows = [[0] * n for _ in range(n)]
    verts = sorted(range(n), key=lambda i: -scores[i])
    for i in verts:
        opponents = [j for j in verts if j != i and rows[i][j] == 0 and rows[j][i] == 0]
        opponents.sort(key=lambda j: remaining[j])
        need = remaining[i]
        if need > len(opponents):
            return None
        for j in opponents[:need]:
            rows[i][j] = 1
        for j in opponents[need:]:
            rows[j][i] = 1
        remaining[i] = 0
        for j in opponents[need:]:
            remaining[j] -= 1
            if remaining[j] < 0:
                return None
    A = IntMatrix(rows)
    if not balance.is_tournament(A) or sorted(stats(A).row_off) != sorted(scores):
        return None
    return A


# -- sweeps ------------------------------------------------------------------


def _fail(name: str, detail: str, repro: str) -> int:
    print(f"FAIL {name}: {detail}")
    print("reproducing input:")
    print(repro)
    return 1


def _sweep_random(args) -> int:
    rng = SplitMix64(args.seed)
    n, bound = args.n, args.range
    for idx in range(args.count):
        A = IntMatrix(rng.random_matrix_entries(n, bound))
        b = balance.bal(A)
        ob = bruteforce.oracle_bal(A, args.cap)
        if b != ob:
            return _fail("oracle-equivalence", f"lattice {b} != oracle {ob}", format_matrix(A))
        if (n * (n - 1)) % b:
            return _fail("divisibility", f"bal {b} does not divide n(n-1)", format_matrix(A))
        images = list(range(n))
        for i in range(n - 1, 0, -1):
            j = rng.randint(0, i)
            images[i], images[j] = images[j], images[i]
        sigma = Permutation(images)
        if balance.bal(conjugate(A, sigma)) != b:
            return _fail("relabeling", f"bal changed under {sigma}", format_matrix(A))
        if args.certify:
            cert = certify.build_certificate(A)
            check = certify.verify(cert, A)
            ok = check.coefficient_sum == b and check.result == mean_matrix(A).scaled(
                b
            ).to_int_matrix()
            if not ok:
                return _fail("certificate", "verification failed", format_matrix(A))
        if args.verbose and (idx + 1) % 50 == 0:
            print(f"  .. {idx + 1}/{args.count}")
    print(f"PASS random n={n} count={args.count} range={bound} seed={args.seed}")
    return 0


def _sweep_exhaustive_3x3(args) -> int:
    lo, hi = args.lo, args.hi
    span = hi - lo + 1
    seen = set()
    for flat in itertools.product(range(lo, hi + 1), repeat=9):
        A = IntMatrix([flat[0:3], flat[3:6], flat[6:9]])
        b = bruteforce.oracle_bal(A)
        seen.add(b)
        if b not in (1, 2, 3, 6):
            return _fail("3x3-range", f"bal {b} outside {{1,2,3,6}}", format_matrix(A))
        pred = balance.three_by_three_predicates(A)
        if pred.predicted_bal() != b:
            return _fail(
                "3x3-predicates",
                f"predicted {pred.predicted_bal()}, oracle {b}",
                format_matrix(A),
            )
    print(f"PASS exhaustive-3x3 range=[{lo},{hi}] ({span ** 9} matrices, bal values {sorted(seen)})")
    return 0


def _sweep_simple_graphs(args) -> int:
    n = args.n
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1, 1 << len(pairs)):
        g = graphs.SignedMultigraph(n)
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                g.set(i, j, 1)
        lam, b = graphs.simple_graph_lambda_min(g)
        b2 = graphs.bal_multigraph(g)
        two_e = g.edge_count_twice()
        lam2 = two_e * b2 // (n * (n - 1))
        if (lam, b) != (lam2, b2):
            from .formats import format_edge_list

            return _fail(
                "simple-graphs",
                f"closed form ({lam},{b}) != lattice ({lam2},{b2})",
                format_edge_list(g),
            )
    print(f"PASS simple-graphs n={n} ({(1 << len(pairs)) - 1} nonempty graphs)")
    return 0


def _sweep_tournaments(args) -> int:
    n = args.n
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        rows = [[0] * n for _ in range(n)]
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                rows[i][j] = 1
            else:
                rows[j][i] = 1
        A = IntMatrix(rows)
        scores = stats(A).row_off
        b = balance.bal_tournament(scores)
        ob = bruteforce.oracle_bal(A, args.cap)
        if b != ob:
            return _fail("tournaments", f"formula {b} != oracle {ob}", format_matrix(A))
    print(f"PASS tournaments n={n} ({1 << len(pairs)} orientations)")
    return 0


def _sweep_structural(args) -> int:
    rng = SplitMix64(args.seed)
    for _ in range(args.count):
        m = rng.randint(1, 5)
        k = rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(m)]
        snf = smith_normal_form(M)
        prod = _mat_mul(_mat_mul(snf.U, M), snf.V)
        if [list(r) for r in snf.D] != prod:
            return _fail("snf-product", "U M V != D", repr(M))
        diag = snf.diagonal
        for i in range(len(diag) - 1):
            if diag[i] and diag[i + 1] % diag[i]:
                return _fail("snf-chain", f"{diag} breaks divisibility", repr(M))
        if snf.rank and min(m, k) <= 4:
            if enumerate_minor_gcd(M, snf.rank) != _prod(diag[: snf.rank]):
                return _fail("snf-minors", "rank-minor gcd mismatch", repr(M))
    for _ in range(args.count // 4 or 1):
        n = rng.randint(4, 5)
        A = IntMatrix(rng.random_matrix_entries(n, 3))
        dec = balance.matrix_primitive_decomposition(A)
        if dec.B + dec.C + dec.F != A:
            return _fail("matrix-decomposition", "A != B + C + F", format_matrix(A))
        lhs = (
            balance.klein_box(A)
            + balance.klein_box(conjugate(A, Permutation([1, 2, 0] + list(range(3, n)))))
            + balance.klein_box(conjugate(A, Permutation([2, 0, 1] + list(range(3, n)))))
        )
        t12_34 = Permutation([1, 0, 3, 2] + list(range(4, n)))
        rhs = balance.triangle_alt(A) + conjugate(balance.triangle_alt(A), t12_34)
        if lhs != rhs:
            return _fail("box-triangle-identity", "identity (box/triangle) fails", format_matrix(A))
        tri = balance.triangle_invariant(A)
        phi = balance.primitivity_lattice(A)
        for u in phi.lattice.basis:
            if tri.h == 0 and u[0] != u[1]:
                return _fail("h-divides", "h = 0 with asymmetric pair", format_matrix(A))
            if tri.h and (u[0] - u[1]) % tri.h:
                return _fail("h-divides", f"h does not divide {u}", format_matrix(A))
        if not phi.lattice.member((tri.h, -tri.h)):
            return _fail("h-pair", "(h,-h) escapes the pod lattice", format_matrix(A))
    print(f"PASS structural count={args.count} seed={args.seed}")
    return 0


def _mat_mul(X, Y):
    rows = len(X)
    inner = len(Y)
    cols = len(Y[0])
    return [
        [sum(X[i][t] * Y[t][j] for t in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def _prod(vals):
    out = 1
    for v in vals:
        out *= v
    return out


def cmd_sweep(args) -> int:
    kind = args.kind
    if kind == "random":
        return _sweep_random(args)
    if kind == "exhaustive-3x3":
        return _sweep_exhaustive_3x3(args)
    if kind == "simple-graphs":
        return _sweep_simple_graphs(args)
    if kind == "tournaments":
        return _sweep_tournaments(args)
    if kind == "structural":
        return _sweep_structural(args)
    print(f"error: unknown sweep kind {kind!r}", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balindex",
        description="Balancing indices of integer matrices and signed multigraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--cap", type=int, default=None, help="oracle permutation cap")

    p_bal = sub.add_parser("bal", help="compute the balancing index of a matrix or graph")
    p_bal.add_argument("input")
    p_bal.add_argument("--format", choices=("auto", "matrix", "edges"), default="auto")
    p_bal.add_argument(
        "--as",
        dest="force_class",
        choices=("auto", "general", "symmetric", "multigraph", "skew", "tournament"),
        default="auto",
        help="force the reported class",
    )
    p_bal.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    p_bal.add_argument("--certify", action="store_true", help="emit a verified certificate")
    add_common(p_bal)
    p_bal.set_defaults(func=cmd_bal)

    p_oracle = sub.add_parser("oracle", help="brute-force balancing index")
    p_oracle.add_argument("input")
    p_oracle.add_argument("--format", choices=("auto", "matrix", "edges"), default="auto")
    add_common(p_oracle)
    p_oracle.set_defaults(func=cmd_oracle)

    p_cert = sub.add_parser("certify", help="emit a certificate in text form")
    p_cert.add_argument("input")
    p_cert.add_argument("--format", choices=("auto", "matrix", "edges"), default="auto")
    add_common(p_cert)
    p_cert.set_defaults(func=cmd_certify)

    p_verify = sub.add_parser("verify", help="verify a certificate against a matrix")
    p_verify.add_argument("certificate")
    p_verify.add_argument("input")
    p_verify.add_argument("--format", choices=("auto", "matrix", "edges"), default="auto")
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_formula = sub.add_parser("formula", help="closed-form values")
    p_formula.add_argument(
        "kind", choices=("simple-graph", "tournament", "wilson", "psi", "ternary-count")
    )
    p_formula.add_argument("args", nargs="*")
    p_formula.add_argument("--check", action="store_true", help="cross-check the value")
    add_common(p_formula)
    p_formula.set_defaults(func=cmd_formula)

    p_sweep = sub.add_parser("sweep", help="run a verification sweep")
    p_sweep.add_argument(
        "kind",
        choices=("random", "exhaustive-3x3", "simple-graphs", "tournaments", "structural"),
    )
    p_sweep.add_argument("--n", type=int, default=4)
    p_sweep.add_argument("--count", type=int, default=100)
    p_sweep.add_argument("--range", type=int, default=2)
    p_sweep.add_argument("--seed", type=int, default=1)
    p_sweep.add_argument("--lo", type=int, default=0)
    p_sweep.add_argument("--hi", type=int, default=2)
    p_sweep.add_argument("--certify", action="store_true")
    p_sweep.add_argument("--verbose", action="store_true")
    add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OracleCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
