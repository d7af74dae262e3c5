from .lyndon import (
    GradedAlphabet, Atom, Bracket, foliage, format_expr, duval, is_lyndon, lyndon_words,
    standard_factorization, standard_bracketing,
)
from .algebra import LieVector, LieAlgebra, dimension, normalize, bracket
from .oracle import BracketOracle, oracle_component
from .parser import parse_bracket, parse_combination, parse_vector, format_vector, format_terms
