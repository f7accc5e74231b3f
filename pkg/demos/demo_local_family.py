"""Four local algebras A(l) over GF(5) that share A/soc A.

Prints the generator search on A(1), then moves the found N to each A(l)
and compares gldim End(N + A).  Takes about a minute.
"""
from repdim.harness.corpus import load_algebra
from repdim.harness.search import search_generator
from repdim.socletransfer import lemma_checks, transfer_generator, verify_identification


def main():
    algs = {l: load_algebra(f"a53_l{l}.alg") for l in range(1, 5)}
    for l, A in algs.items():
        print(f"A({l}): dim {A.dim}")
    res = search_generator(algs[1], dim_cap=4)
    dims = [X.dim for X in res.summands]
    print(f"search on A(1): {len(res.candidates)} candidates, {res.evaluated} sets, best gldim {res.value}, N summand dims {dims}")
    for l in range(2, 5):
        ident = verify_identification(algs[1], algs[l])
        e = [c.compatibility for c in lemma_checks(ident)]
        _, _, r = transfer_generator(ident, res.module)
        print(f"A(1) -> A({l}): gldim {r.text}; fixed pairs compatible {e}")


if __name__ == "__main__":
    main()
