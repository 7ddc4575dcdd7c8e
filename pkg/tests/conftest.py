import string

from hypothesis import strategies as st

from finduality.caba import Caba
from finduality.finset import FinMap, FinSet
from finduality.generators import all_lattices, standard_caba, standard_set
from finduality.modal import KripkeFrame

LATTICES_UP_TO_5 = list(all_lattices(5))
LATTICES_UP_TO_4 = [M for M in LATTICES_UP_TO_5 if len(M) <= 4]

label_sets = st.sets(st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=3), max_size=4)


@st.composite
def finsets(draw, max_size=4):
    return standard_set(draw(st.integers(0, max_size)))


@st.composite
def cabas(draw, max_atoms=3):
    return standard_caba(draw(st.integers(0, max_atoms)))


@st.composite
def labelled_cabas(draw, max_atoms=3):
    return Caba(FinSet(draw(st.sets(st.sampled_from("pqrstxyz"), max_size=max_atoms))))


@st.composite
def maps(draw, max_size=3, dom=None, cod=None):
    X = dom if dom is not None else draw(finsets(max_size))
    Y = cod if cod is not None else draw(finsets(max_size))
    if not len(Y):
        X = FinSet()
    images = draw(st.lists(st.sampled_from(Y.elements), min_size=len(X), max_size=len(X))) if len(Y) else []
    return FinMap(X, Y, dict(zip(X.elements, images)))


@st.composite
def frames(draw, max_worlds=4):
    n = draw(st.integers(0, max_worlds))
    W = [str(i) for i in range(n)]
    cells = [(x, y) for x in W for y in W]
    edges = draw(st.sets(st.sampled_from(cells))) if cells else set()
    return KripkeFrame(W, edges)


@st.composite
def elements_of(draw, A):
    return frozenset(draw(st.sets(st.sampled_from(A.atoms.elements)))) if len(A.atoms) else frozenset()


lattices = st.sampled_from(LATTICES_UP_TO_5)
