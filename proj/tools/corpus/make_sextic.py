"""Builds corpus/extensions/S3_sextic.json with PARI/GP (cypari2).

L = K(sqrt(-3)) where K is the splitting field of x^3 - 4x + 1 (discriminant 229), so
Gal(L/Q) = S3 x C2 with complex conjugation generating the C2 factor.  The group is modelled
on the points {1,2,3} (roots of the cubic) and {4,5} (the two square roots of -3).

Run from the repository root:  python3 tools/corpus/make_sextic.py
"""

import hashlib
import json
import sys

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)
pari.set_real_precision(60)

CUBIC = "x^3 - 4*x + 1"
GENERATORS = ["(1,2,3)", "(1,2)", "(4,5)"]
T_PRIMES = [5, 7, 11]
RAY_T = 7
P_ODD_DIM2 = "d2:[2,-2,0,0,-1,1]"  # rho (x) omega in the library's class order


def perm_of(sigma, roots, s3, lpol):
    images = []
    for r in roots:
        img = pari(f"Mod(subst(lift({r}), y, {sigma}), {lpol})")
        images.append(next(k for k, q in enumerate(roots) if q == img))
    flips = pari(f"Mod(subst(lift({s3}), y, {sigma}), {lpol})") != s3
    return tuple(images), flips


def target(gen):
    """The (root permutation, flips) described by a generator string."""
    if gen == "(4,5)":
        return (0, 1, 2), True
    if gen == "(1,2)":
        return (1, 0, 2), False
    if gen == "(1,2,3)":
        return (1, 2, 0), False
    raise ValueError(gen)


def smith_quotient(cyc, extra_relations, actions):
    """Z^n / (diag(cyc) + extra) in Smith form; actions are transported to the new basis."""
    n = len(cyc)
    cols = [[cyc[i] if r == i else 0 for r in range(n)] for i in range(n)] + [list(v) for v in extra_relations]
    rel = pari.matrix(n, len(cols), [cols[c][r] for r in range(n) for c in range(len(cols))])
    h = pari.mathnf(rel)
    u, v, d = pari.matsnf(h, 1)
    diag = [int(d[i, i]) for i in range(n)]
    keep = [i for i in range(n) if diag[i] > 1]
    uinv = u ** -1
    out = []
    for m in actions:
        mat = pari.matrix(n, n, [m[r][c] for r in range(n) for c in range(n)])
        t = u * mat * uinv
        out.append([[int(t[a, b]) % diag[a] for b in keep] for a in keep])
    factors = [diag[i] for i in keep]
    # increasing divisibility order
    order = list(range(len(keep)))[::-1]
    factors = [factors[i] for i in order]
    out = [[[m[a][b] for b in order] for a in order] for m in out]
    return factors, out


def main():
    lpol = pari(f"subst(polredabs(polcompositum(nfsplitting({CUBIC}), x^2 + 3)[1]), x, y)")
    bnf = pari.bnfinit(lpol, 1)
    certified = int(pari.bnfcertify(bnf))
    roots = list(pari.nfroots(lpol, pari(CUBIC)))
    roots = [pari(f"Mod({r}, {lpol})") for r in roots]
    s3 = pari(f"Mod({pari.nfroots(lpol, pari('x^2 + 3'))[0]}, {lpol})")
    autos = {}
    for sigma in pari.nfgaloisconj(lpol):
        key = perm_of(sigma, roots, s3, lpol)
        for g in GENERATORS:
            if key == target(g):
                autos[g] = sigma
    assert len(autos) == 3

    def galois_image(sigma, ideal):
        return pari.nfgaloisapply(bnf, sigma, ideal)

    # class group
    cyc = [int(c) for c in bnf.bnf_get_cyc()]
    gens = list(bnf.bnf_get_gen())
    acts = []
    for g in GENERATORS:
        cols = [pari.bnfisprincipal(bnf, galois_image(autos[g], I), 0) for I in gens]
        acts.append([[int(cols[c][r]) for c in range(len(gens))] for r in range(len(gens))])
    cl_factors, cl_actions = smith_quotient(cyc, [], acts)

    # S-ray class group modulo T = {RAY_T}: ray classes mod the primes above RAY_T, modulo the
    # classes of the primes above the finite places of S
    bnr = pari.bnrinit(bnf, RAY_T, 1)
    rcyc = [int(c) for c in pari("(b) -> b.cyc")(bnr)]
    rgens = list(pari("(b) -> b.gen")(bnr))
    racts = []
    for g in GENERATORS:
        cols = [pari.bnrisprincipal(bnr, galois_image(autos[g], I), 0) for I in rgens]
        racts.append([[int(cols[c][r]) for c in range(len(rgens))] for r in range(len(rgens))])
    s_primes = [pr for ell in (3, 229) for pr in pari.idealprimedec(bnf, ell)]
    s_classes = [[int(c) for c in pari.bnrisprincipal(bnr, pr, 0)] for pr in s_primes]
    ray_factors, ray_actions = smith_quotient(rcyc, s_classes, racts)

    # L-values at 0 of the odd characters of Q(sqrt(-3)) and of E = cubic(sqrt(-3))
    e_pol = pari(f"polredabs(polcompositum({CUBIC}, x^2 + 3)[1])")
    be, bk = pari.bnfinit(e_pol, 1), pari.bnfinit(pari(CUBIC), 1)
    h_e, h_k = int(be.bnf_get_no()), int(bk.bnf_get_no())
    w_e = int(pari("(b) -> b.tu[1]")(be))
    reg_ratio = pari("(a, b) -> a.reg / b.reg")(be, bk)
    reg_ratio_exact = pari.bestappr(reg_ratio, 1000)
    # zeta_E / zeta_K = L(omega) L(rho omega); leading terms at s = 0
    l_rho_omega = pari(f"({h_e} * {reg_ratio_exact} / {w_e}) / ({h_k} / 2) / (1/3)")
    numeric = pari(f"lfun({e_pol}, 0, 2) / lfun({CUBIC}, 0, 2) / lfun(-3, 0)")
    assert abs(float(numeric - l_rho_omega)) < 1e-30, (numeric, l_rho_omega)
    h687 = int(pari.qfbclassno(-687))

    record = {
        "L": str(lpol),
        "E": str(e_pol),
        "h_E": h_e,
        "h_K": h_k,
        "w_E": w_e,
        "R_E/R_K": str(reg_ratio_exact),
        "numeric": str(pari.bestappr(numeric, 10**6)),
        "pari": str(pari.version()),
    }
    digest = hashlib.sha256(json.dumps(record, sort_keys=True).encode()).hexdigest()

    def frob(ell):
        nroots = len(pari.polrootsmod(pari(CUBIC), ell))
        s3part = {3: "", 1: "(1,2)", 0: "(1,2,3)"}[nroots]
        c2part = "(4,5)" if int(pari.kronecker(-3, ell)) == -1 else ""
        return (s3part + c2part) or "()"

    places = [
        {"label": "inf", "archimedean": True, "S": True},
        {"label": "3", "norm": 3, "frobenius": "(1,2,3)", "inertia": ["(4,5)"], "S": True},
        {"label": "229", "norm": 229, "frobenius": "()", "inertia": ["(1,2)"], "S": True},
    ]
    places += [{"label": str(ell), "norm": ell, "frobenius": frob(ell)} for ell in T_PRIMES]

    # Artin map of the abelian quotient: chi_229 detects the S3 sign, chi_-3 the C2 factor
    g2 = next(a for a in range(2, 687) if a % 3 == 1 and int(pari.znorder(pari.Mod(a, 229))) == 228)
    artin = {"modulus": 687, "images": [{"residue": 230, "frobenius": "(4,5)"}, {"residue": g2, "frobenius": "(1,2)"}]}

    cert_source = ("L(0, rho omega) = (h_E R_E / w_E) / (h_K R_K / 2) / L(0, chi_-3) from the leading terms of "
                   "zeta_E and zeta_K at s = 0, E = Q(alpha, sqrt(-3)), K = Q(alpha); PARI " + str(pari.version()))
    datum = {
        "name": "S3-sextic: splitting field of x^3 - 4x + 1 adjoined sqrt(-3)",
        "group": {"degree": 5, "generators": [[g] for g in GENERATORS], "j": "(4,5)"},
        "base_field": "Q",
        "mu_order": 6,
        "ramified_primes": [3, 229],
        "artin_map": artin,
        "places": places,
        "t_sets": [[str(ell)] for ell in T_PRIMES],
        "l_values": [
            {"character": P_ODD_DIM2, "value": str(l_rho_omega), "provenance": "ingested", "source": cert_source,
             "source_hash": "sha256:" + digest},
            {"character": "d1:[1,-1,1,-1,1,-1]", "value": "1/3", "provenance": "computed",
             "source": "Bernoulli number of chi_-3"},
            {"character": "d1:[1,-1,-1,1,1,-1]", "value": str(h687), "provenance": "computed",
             "source": "2 h(-687) / 2 with h(-687) from reduced forms"},
        ],
        "class_group": {"label": "cl_L", "invariant_factors": cl_factors, "action": cl_actions},
        "ray_class_group": {"label": "cl_S^T", "T": [str(RAY_T)], "invariant_factors": ray_factors,
                            "action": ray_actions},
        "provenance": {
            "defining_polynomial": str(lpol),
            "class_group": "bnfinit" + (", certified by bnfcertify" if certified == 1 else " (GRH)"),
            "l_value_record": record,
        },
    }
    out = sys.argv[1] if len(sys.argv) > 1 else "corpus/extensions/S3_sextic.json"
    with open(out, "w") as f:
        json.dump(datum, f, indent=2)
        f.write("\n")
    print(json.dumps({"cl": cl_factors, "ray": ray_factors, "L(0,rho omega)": str(l_rho_omega), "certified": certified}))


if __name__ == "__main__":
    main()
