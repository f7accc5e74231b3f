"""A short exact sequence over A that has no counterpart over A'.

Over the two-vertex pair, the 14th seeded sequence is a projective cover
0 -> Y -> P -> X -> 0.  Carried to A', the kernel of the projective cover
of X is no longer Y, so no exact 0 -> Y -> P' -> X -> 0 exists there.
"""
import numpy as np

from repdim.harness.corpus import load_algebra
from repdim.harness.randmod import random_sequence
from repdim.repmod import ModuleError, is_isomorphic, morphism_spaces, projective_cover
from repdim.socletransfer import sequence_with_terms, transfer_sequence, verify_identification


def main():
    ident = verify_identification(load_algebra("a51.alg"), load_algebra("a51p.alg"))
    rng = np.random.default_rng(0)
    seq = [random_sequence(ident, rng) for _ in range(14)][-1]
    print(f"Y dims {seq.Y.dims}, N0 dims {seq.N0.dims}, P dims {seq.P.dims}, X dims {seq.X.dims}")
    omega_a = morphism_spaces(projective_cover(seq.X)).kernel
    omega_b = morphism_spaces(projective_cover(ident.to_b(seq.X))).kernel
    print("over A : kernel of cover of X is Y:", is_isomorphic(omega_a, seq.Y))
    print("over A': kernel of cover of X is Y:", is_isomorphic(omega_b, ident.to_b(seq.Y)))
    cert = sequence_with_terms(ident, seq)
    print(f"certificate: exists={cert.exists} exhaustive={cert.exhaustive}")
    try:
        transfer_sequence(ident, seq)
    except ModuleError as exc:
        print("transfer_sequence:", exc)


if __name__ == "__main__":
    main()
