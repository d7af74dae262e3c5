"""
括号表达式与 LieVector 文本格式的解析和输出
"""
from fractions import Fraction

import lark

from core.logger_config import logger
from core.exceptions import ParseError, LieException
from lie.lyndon import Atom, Bracket
from lie.algebra import LieVector

EXPR_GRAMMAR = r"""
    start: term+
    term: SIGN? coefficient? expr
    coefficient: NUMBER ("/" NUMBER)? ("*" | "·")?
    ?expr: bracket
         | letter
    bracket: "[" expr "," expr "]"
    letter: LETTER

    SIGN: "+" | "-"
    NUMBER: /[0-9]+/
    LETTER: /[A-Za-z]/

    %import common.WS
    %ignore WS
"""

VECTOR_GRAMMAR = r"""
    start: term+
    term: SIGN? coefficient? basis
    coefficient: NUMBER ("/" NUMBER)? ("*" | "·")?
    ?basis: word
          | square
    word: WORD
    square: "(" WORD ")" "^[2]"

    SIGN: "+" | "-"
    NUMBER: /[0-9]+/
    WORD: /[A-Za-z]+/

    %import common.WS
    %ignore WS
"""


class _CombinationBuilder(lark.Transformer):
    """把解析树变成 [(系数, 对象), ...]"""

    def __init__(self, alpha):
        super().__init__()
        self.alpha = alpha

    def start(self, args):
        return list(args)

    def term(self, args):
        sign, coef = 1, Fraction(1)
        for arg in args[:-1]:
            if isinstance(arg, lark.Token) and arg.type == "SIGN":
                sign = -1 if arg == "-" else 1
            else:
                coef = arg
        return sign * coef, args[-1]

    def coefficient(self, args):
        if len(args) == 2:
            return Fraction(int(args[0]), int(args[1]))
        return Fraction(int(args[0]))

    def bracket(self, args):
        return Bracket(args[0], args[1])

    def letter(self, args):
        return Atom(self.alpha.index(str(args[0])))

    def word(self, args):
        return self.alpha.word(str(args[0])), False

    def square(self, args):
        return self.alpha.word(str(args[0])), True


_EXPR_PARSER = lark.Lark(EXPR_GRAMMAR, parser="lalr")
_VECTOR_PARSER = lark.Lark(VECTOR_GRAMMAR, parser="lalr")


def _parse(parser, text, alpha, what):
    try:
        tree = parser.parse(text)
        return _CombinationBuilder(alpha).transform(tree)
    except lark.exceptions.VisitError as e:
        logger.error(f"{what} 解析失败: {text}")
        raise ParseError(f"{what} '{text}' 中含有字母表外的字母", e.orig_exc)
    except lark.exceptions.LarkError as e:
        logger.error(f"{what} 解析失败: {text}")
        raise ParseError(f"无法解析{what} '{text}'", e)


def parse_bracket(text, alpha):
    """解析单个括号表达式, 例如 [[a,b],[a,a]]"""
    combination = parse_combination(text, alpha)
    if len(combination) != 1 or combination[0][0] != 1:
        raise ParseError(f"'{text}' 不是单个括号表达式")
    return combination[0][1]


def parse_combination(text, alpha):
    """解析括号表达式的线性组合, 例如 2[a,b] - [b,a]"""
    return _parse(_EXPR_PARSER, text, alpha, "括号表达式")


def parse_vector(text, alpha):
    """解析 LieVector 文本格式"""
    if text.strip() == "0":
        return LieVector()
    terms = {}
    for coef, key in _parse(_VECTOR_PARSER, text, alpha, "LieVector"):
        terms[key] = terms.get(key, 0) + coef
    return LieVector(terms)


def format_vector(vector, alpha):
    """'2·aaab +1·aabab -1/2·(ab)^[2]', 零向量为 '0'"""
    if not vector:
        return "0"
    parts = []
    for (word, square), coef in vector.items():
        text = alpha.format_word(word)
        basis = f"({text})^[2]" if square else text
        magnitude = abs(coef)
        sign = "-" if coef < 0 else ("+" if parts else "")
        parts.append(f"{sign}{magnitude}·{basis}")
    return " ".join(parts)


def format_terms(vector, alpha):
    """结构化的项列表, 供 JSON 输出"""
    return [{"word": alpha.format_word(word), "square": square, "coefficient": str(coef)}
            for (word, square), coef in vector.items()]


def vector_from_terms(terms, alpha):
    try:
        return LieVector({(alpha.word(t["word"]), bool(t.get("square", False))): Fraction(t["coefficient"])
                          for t in terms})
    except (KeyError, ValueError, LieException) as e:
        raise ParseError(f"无法解析项列表: {str(e)}", e)
