"""Independent sympy cross-check for the values frozen into the C++ tests.

Not part of the build. Run with python3 and sympy:

    python3 tests/oracle/oracle.py theorem 6
    python3 tests/oracle/oracle.py determining 2
    python3 tests/oracle/oracle.py kappa 3
    python3 tests/oracle/oracle.py liealg 6
    python3 tests/oracle/oracle.py hopfcole

Jets are plain symbols u{tier}_{alpha}_{nt}{nx}; total derivatives walk the
free symbols. Everything is expanded after each step, so equality checks are
structural on sympy's canonical sums.
"""

import itertools
import sys

import sympy as sp

t, x = sp.symbols("t x")
_jets = {}
_keys = {}


def u(tier, a, nt=0, nx=0):
    k = (tier, a, nt, nx)
    if k not in _jets:
        s = sp.Symbol(f"u{tier}_{a}_{nt}{nx}")
        _jets[k] = s
        _keys[s] = k
    return _jets[k]


def total(e, var):
    r = sp.diff(e, var)
    for s in e.free_symbols:
        k = _keys.get(s)
        if k is None:
            continue
        tier, a, nt, nx = k
        r += sp.diff(e, s) * (u(tier, a, nt + 1, nx) if var == t else u(tier, a, nt, nx + 1))
    return sp.expand(r)


def delta(m, tier):
    out = []
    for a in range(1, m + 1):
        e = u(tier, a, 1, 0) + u(tier, a) * u(tier, 1, 0, 1) - u(tier, a, 0, 2)
        if a < m:
            e += u(tier, a + 1, 0, 1)
        out.append(e)
    return out


def tier_of(m):
    return (m + 1) // 2


def symmetry_field(m):
    """Field written case by case, independently of the uniform formula used in C++."""
    k = tier_of(m)
    U = lambda a: u(k + 1, a)
    v = lambda a: u(k, a)
    xi = sp.Rational(1, 2) * (-v(1) + U(1))
    etas = []
    for a in range(1, m + 1):
        if a <= m - 2:
            e = (-v(1) ** 2 * v(a) - v(1) * v(a + 1) - v(2) * v(a) + U(1) * v(1) * v(a) + U(2) * v(a)
                 + U(1) * v(a + 1) - v(a + 2) + U(a + 2))
        elif a == m - 1:
            e = (-v(1) ** 2 * v(m - 1) - v(1) * v(m) - v(2) * v(m - 1) + U(1) * v(1) * v(m - 1)
                 + U(2) * v(m - 1) + U(1) * v(m) + U(m + 1))
        else:
            e = -v(1) ** 2 * v(m) - (0 if m == 1 else v(2) * v(m)) + U(1) * v(1) * v(m) + U(2) * v(m) + U(m + 2)
        etas.append(sp.expand(e / 4))
    return 1, xi, etas, k


ORDERS = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def prolong(tau, xi, etas, m, k):
    out = []
    for a in range(1, m + 1):
        W = etas[a - 1] - tau * u(k, a, 1, 0) - xi * u(k, a, 0, 1)
        coeffs = {}
        for nt, nx in ORDERS:
            e = W
            for _ in range(nt):
                e = total(e, t)
            for _ in range(nx):
                e = total(e, x)
            coeffs[(nt, nx)] = sp.expand(e + tau * u(k, a, nt + 1, nx) + xi * u(k, a, nt, nx + 1))
        out.append(coeffs)
    return out


def apply_field(F, tau, xi, etas, pr, m, k):
    r = tau * sp.diff(F, t) + xi * sp.diff(F, x)
    for a in range(1, m + 1):
        r += etas[a - 1] * sp.diff(F, u(k, a))
        for J, c in pr[a - 1].items():
            r += c * sp.diff(F, u(k, a, *J))
    return sp.expand(r)


def rewrite(e, rules):
    for _ in range(50):
        e2 = sp.expand(e.xreplace(rules))
        if e2 == e:
            return e
        e = e2
    raise RuntimeError("rewrite did not settle")


def manifold_rules(m, k, xi, etas):
    R = {}
    for a in range(1, m + 1):
        ut = etas[a - 1] - xi * u(k, a, 0, 1)
        uxx = sp.expand(ut + u(k, a) * u(k, 1, 0, 1) + (u(k, a + 1, 0, 1) if a < m else 0))
        R[u(k, a, 1, 0)] = ut
        R[u(k, a, 0, 2)] = uxx
        R[u(k, a, 1, 1)] = total(ut, x)
        R[u(k, a, 2, 0)] = total(ut, t)
        R[u(k, a, 0, 3)] = total(uxx, x)
    return R


def cmd_theorem(top):
    for m in range(1, top + 1):
        tau, xi, etas, k = symmetry_field(m)
        pr = prolong(tau, xi, etas, m, k)
        R = manifold_rules(m, k, xi, etas)
        D, D2 = delta(m, k), delta(m + 2, k + 1)
        solved = {u(k + 1, a, 1, 0): sp.expand(-(D2[a - 1] - u(k + 1, a, 1, 0))) for a in range(1, m + 3)}
        for a in range(m):
            r = rewrite(apply_field(D[a], tau, xi, etas, pr, m, k), R)
            vs = [u(k, b) for b in range(1, m + 1)] + [u(k, b, 0, 1) for b in range(1, m + 1)]
            for mon, c in sp.Poly(r, *vs).terms():
                lam = {j + 1: sp.expand(c).coeff(u(k + 1, j + 1, 1, 0)) for j in range(m + 2)}
                lam = {j: val for j, val in lam.items() if val != 0}
                ok = sp.expand(c - sum(val * D2[j - 1] for j, val in lam.items())) == 0
                print(f"m={m} eq={a + 1} monomial={mon} multipliers={lam} spans={ok}")
            print(f"m={m} eq={a + 1} final={sp.expand(rewrite(r, solved))}")


def generic_field(m, k=1):
    vs = [t, x] + [u(k, a) for a in range(1, m + 1)]
    return 1, sp.Function("xi")(*vs), [sp.Function(f"eta{a}")(*vs) for a in range(1, m + 1)]


def cmd_determining(m):
    tau, xi, etas = generic_field(m)
    pr = prolong(tau, xi, etas, m, 1)
    R = manifold_rules(m, 1, xi, etas)
    D = delta(m, 1)
    for a in range(m):
        r = rewrite(apply_field(D[a], tau, xi, etas, pr, m, 1), R)
        for mon, c in sp.Poly(r, *[u(1, b, 0, 1) for b in range(1, m + 1)]).terms():
            print(f"eq{a + 1} {mon}: {c}")


def cmd_kappa(m):
    kap = sp.Symbol("kappa")
    us = [u(1, a) for a in range(1, m + 1)]
    xi = kap * us[0] + sp.Function("f")(t, x) / 2
    unknown = set()
    etas = []
    for a in range(m):
        e = 0
        for mono in (mm for d in range(4) for mm in itertools.combinations_with_replacement(range(m), d)):
            fn = sp.Function(f"a{a + 1}_" + "".join(str(i + 1) for i in mono))(t, x)
            unknown.add(fn)
            e += fn * sp.Mul(*[us[i] for i in mono])
        etas.append(e)
    pr = prolong(1, xi, etas, m, 1)
    R = manifold_rules(m, 1, xi, etas)
    D = delta(m, 1)
    eqs = []
    for a in range(m):
        r = rewrite(apply_field(D[a], 1, xi, etas, pr, m, 1), R)
        P = sp.Poly(r, *([u(1, b, 0, 1) for b in range(1, m + 1)] + us))
        eqs += [sp.expand(c) for _, c in P.terms()]

    def derivs_of(e, fn):
        return any(d.expr == fn for d in e.atoms(sp.Derivative))

    while True:
        eqs = [e for e in eqs if e != 0]
        progressed = False
        for e in sorted(eqs, key=sp.count_ops):
            for fn in sorted(e.atoms(sp.Function) & unknown, key=str):
                c = sp.expand(e).coeff(fn)
                if not (c.is_Rational and c != 0) or derivs_of(e, fn):
                    continue
                rest = sp.expand(e - c * fn)
                if fn in rest.atoms(sp.Function):
                    continue
                sol = sp.expand(-rest / c)
                eqs = [sp.expand(q.subs(fn, sol).doit()) for q in eqs]
                unknown.discard(fn)
                progressed = True
                break
            if progressed:
                break
        if not progressed:
            break
    pure = [sp.Poly(e, kap) for e in eqs if not e.atoms(sp.Function) and e.free_symbols <= {kap}]
    g = pure[0]
    for p in pure[1:]:
        g = sp.gcd(g, p)
    print(f"m={m} constraint={sp.factor(g.as_expr())}")


def generators(m):
    k = tier_of(m)
    v = lambda a: u(k, a)
    z = [0] * m
    G = [(1, 0, list(z)), (0, 1, list(z)), (2 * t, x, [-a * v(a) for a in range(1, m + 1)])]
    G.append((0, t, [m] + [(a - m - 1) * v(a - 1) for a in range(2, m + 1)]))
    e = [m * x - t * v(1)]
    if m >= 2:
        e.append(-((m - 1) * (x * v(1) + m) + 2 * t * v(2)))
    for a in range(3, m + 1):
        e.append(-(a * t * v(a) + (m - a + 1) * (x * v(a - 1) - (m - a + 2) * v(a - 2))))
    G.append((t ** 2, t * x, e))
    return G, k


def cmd_liealg(top):
    for m in range(1, top + 1):
        G, k = generators(m)
        vs = [t, x] + [u(k, a) for a in range(1, m + 1)]

        def act(A, f):
            tau, xi, et = A
            return sp.expand(tau * sp.diff(f, t) + xi * sp.diff(f, x) + sum(et[a] * sp.diff(f, u(k, a + 1)) for a in range(m)))

        comps = lambda A: [A[0], A[1]] + A[2]
        cs = sp.symbols("c1:6")
        table = {}
        for i, j in itertools.combinations(range(5), 2):
            br = [sp.expand(act(G[i], comps(G[j])[c]) - act(G[j], comps(G[i])[c])) for c in range(m + 2)]
            eqs = []
            for c in range(m + 2):
                lin = br[c] - sum(cs[l] * comps(G[l])[c] for l in range(5))
                eqs += sp.Poly(sp.expand(lin), *vs).coeffs()
            sol = sp.solve(eqs, cs, dict=True)
            table[(i + 1, j + 1)] = {kk: vv for kk, vv in sol[0].items() if vv != 0} if sol else None
        print(m, table)


def cmd_hopfcole():
    def heat_poly(n):
        p = [sp.Integer(1), x]
        for k in range(2, n + 1):
            p.append(sp.expand(x * p[-1] + 2 * (k - 1) * t * p[-2]))
        return p[n]

    print("p2 =", heat_poly(2), " p3 =", heat_poly(3))

    def solve(vs):
        m = len(vs)
        A = sp.Matrix(m, m, lambda i, j: (-2) ** j * sp.diff(vs[i], x, j))
        b = sp.Matrix(m, 1, lambda i, _: (-2) ** m * sp.diff(vs[i], x, m))
        w = A.LUsolve(b)
        return [sp.simplify(w[m - a]) for a in range(1, m + 1)]

    def residuals(us):
        m = len(us)
        out = []
        for a in range(m):
            r = sp.diff(us[a], t) + us[a] * sp.diff(us[0], x) - sp.diff(us[a], x, 2)
            if a + 1 < m:
                r += sp.diff(us[a + 1], x)
            out.append(sp.simplify(r))
        return out

    for name, vs in [("wave", [1 + sp.exp(t - x)]), ("tanh", [sp.exp(t) * sp.cosh(x)]),
                     ("m=2", [x, x ** 2 + 2 * t]), ("m=3", [heat_poly(n) for n in (1, 2, 3)])]:
        us = solve(vs)
        print(name, us, "residuals", residuals(us))


if __name__ == "__main__":
    cmd, arg = sys.argv[1], (int(sys.argv[2]) if len(sys.argv) > 2 else 0)
    {"theorem": cmd_theorem, "determining": cmd_determining, "kappa": cmd_kappa, "liealg": cmd_liealg}.get(
        cmd, lambda _: cmd_hopfcole())(arg)
