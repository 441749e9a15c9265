from fractions import Fraction

from hypothesis import strategies as st

from rbseries.rings import Q, RingElement, matrix_ring, scalar_ring

SCALAR = scalar_ring()
MAT2 = matrix_ring(2)


def rationals(max_num: int = 20, max_den: int = 12):
    return st.fractions(
        min_value=Fraction(-max_num), max_value=Fraction(max_num),
        max_denominator=max_den,
    ).map(lambda f: Q(f.numerator, f.denominator))


def scalar_elements():
    return rationals().map(lambda x: RingElement(SCALAR, x))


def matrix_elements():
    return st.tuples(
        *[st.tuples(*[rationals(5, 5) for _ in range(2)]) for _ in range(2)]
    ).map(lambda rows: RingElement(MAT2, rows))


def ring_elements():
    return st.one_of(scalar_elements(), matrix_elements())
