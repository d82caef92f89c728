"""Regenerate the shipped fixture documents from the corpus builders.

    python3 tools/make_fixtures.py
"""

import os

from nqd import corpus, io
from nqd.cdg import dualize

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "nqd", "fixtures")


def write(name, doc):
    with open(os.path.join(OUT, name + ".json"), "w") as fh:
        fh.write(io.dumps(doc))


def main():
    os.makedirs(OUT, exist_ok=True)
    for name in corpus.PRESENTATIONS:
        p = corpus.presentation(name)
        write(name, io.presentation_to_doc(p))
        write(name + "_dual", io.cdg_to_doc(dualize(p)))
    for name, a in corpus.quadratic_corpus().items():
        write("quadratic_" + name, io.quadratic_to_doc(a))
    for name in corpus.MATRIX_CONNECTIONS:
        write(name, io.cdg_to_doc(corpus.connection(name)))
    m = corpus.weyl_total_space()
    write("weyl_total_space", io.cdg_to_doc(m.target))
    write("weyl_total_space_morphism", io.morphism_to_doc(m))
    m = corpus.heis3_ce_morphism()
    write("heis3_ext_to_ce_morphism", io.morphism_to_doc(m))
    # identity-type morphisms (id, e) between successive twists of the matrix connection:
    # matrix_connection -> matrix_connection_twisted -> matrix_connection_twisted2
    psi = corpus.connection("matrix_connection")
    e = psi.alg.basis_element(1, 0)
    write("matrix_connection_twist_morphism",
          {"kind": "morphism", "identity": True,
           "alpha": [1 if k == 0 else 0 for k in range(psi.alg.dim(1))]})
    for k, suffix in ((1, "twisted"), (2, "twisted2")):
        a = psi.alpha0 + e * k
        entries = {psi.alg.basis_label(1, j): c for j, c in enumerate(a.vec) if c}
        tw = corpus.matrix_connection(2, 3, seed=0, alpha0=entries)
        write("matrix_connection_" + suffix, io.cdg_to_doc(tw))

if __name__ == "__main__":
    main()
