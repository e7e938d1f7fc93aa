"""
Exact rational scalars and matrices.

Scalars are fractions.Fraction. Vectors of class spaces are sympy column
matrices (ImmutableMatrix of shape (dim, 1)) and linear maps between class
spaces are ImmutableMatrix of shape (target dim, source dim), so empty
(dimension 0) spaces need no special casing.
"""

import re
from fractions import Fraction

import sympy
from sympy import QQ, ImmutableMatrix
from sympy.polys.matrices import DomainMatrix


RATIONAL_PATTERN = re.compile(r'-?\d+(/\d+)?', re.ASCII)


def parse_rational(text):
    """
    Parse a rational written as "p/q" or "p".

    :param text: str. rational in the document notation
    :return: Fraction. value in lowest terms
    :raise ValueError: text is not of the form p or p/q, or q is zero
    """
    if isinstance(text, bool) or not isinstance(text, str):
        raise ValueError('expected a rational string, got {!r}'.format(text))
    if not RATIONAL_PATTERN.fullmatch(text):
        raise ValueError('{!r} is not of the form p or p/q'.format(text))
    if '/' in text and int(text.split('/')[1]) == 0:
        raise ValueError('{!r} has a zero denominator'.format(text))
    return Fraction(text)


def format_rational(value):
    """
    Canonical text of a rational: "p/q" in lowest terms with q > 0, or "p".

    :param value: Fraction, int or sympy Rational
    :return: str.
    """
    return str(to_fraction(value))


def to_fraction(value):
    """Convert an int, Fraction or sympy Rational to a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Basic):
        rational = sympy.Rational(value)
        return Fraction(int(rational.p), int(rational.q))
    raise TypeError('cannot convert {!r} to an exact rational'.format(value))


def to_sympy(value):
    value = to_fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def vector(values):
    """
    Column vector from a sequence of rationals.

    :param values: [Fraction]. entries
    :return: ImmutableMatrix. shape (len(values), 1)
    """
    values = list(values)
    return ImmutableMatrix(len(values), 1, [to_sympy(v) for v in values])


def zero_vector(dim):
    return ImmutableMatrix.zeros(dim, 1)


def matrix(rows, n_rows, n_cols):
    """
    Matrix from a list of rows with an explicit shape.

    The shape is explicit so that maps into or out of dimension 0 keep their
    dimensions.

    :param rows: [[Fraction]]. n_rows rows of n_cols entries each
    :param n_rows: int.
    :param n_cols: int.
    :return: ImmutableMatrix.
    """
    flat = []
    for row in rows:
        flat.extend(to_sympy(v) for v in row)
    return ImmutableMatrix(n_rows, n_cols, flat)


def zero_map(n_rows, n_cols):
    return ImmutableMatrix.zeros(n_rows, n_cols)


def identity_map(dim):
    return ImmutableMatrix.eye(dim)


def entries(vec):
    """Entries of a column vector as Fractions"""
    return [to_fraction(vec[k, 0]) for k in range(vec.rows)]


def rows_of(mat):
    """Rows of a matrix as lists of Fractions"""
    return [[to_fraction(mat[r, c]) for c in range(mat.cols)] for r in range(mat.rows)]


def is_zero(vec):
    return all(entry == 0 for entry in vec)


def pairing(functional, vec):
    """
    Evaluate a functional (given as a column vector) on a class.

    :return: Fraction.
    """
    if functional.rows != vec.rows:
        raise ValueError('pairing of lengths {} and {}'.format(functional.rows, vec.rows))
    total = sympy.Integer(0)
    for k in range(vec.rows):
        total += functional[k, 0] * vec[k, 0]
    return to_fraction(total)


def rank(mat):
    """
    Exact rank of a rational matrix.

    Elimination runs on sympy's dense domain matrices over QQ, so there is
    no pivot tolerance and the larger coboundary matrices stay fast.

    :param mat: ImmutableMatrix or [[Fraction]].
    :return: int.
    """
    if not isinstance(mat, sympy.MatrixBase):
        rows = [list(row) for row in mat]
        n_cols = len(rows[0]) if rows else 0
        mat = matrix(rows, len(rows), n_cols)
    if mat.rows == 0 or mat.cols == 0:
        return 0
    return DomainMatrix.from_Matrix(sympy.Matrix(mat)).convert_to(QQ).rank()


def nullspace(mat):
    """
    Basis of the kernel of a rational matrix.

    :param mat: ImmutableMatrix. shape (m, n)
    :return: [ImmutableMatrix]. column vectors of length n
    """
    if mat.cols == 0:
        return []
    if mat.rows == 0:
        return [ImmutableMatrix.eye(mat.cols)[:, k] for k in range(mat.cols)]
    return [ImmutableMatrix(v) for v in sympy.Matrix(mat).nullspace()]
