"""
Z/2 分次有序字母表, Lyndon 词与标准括号化
"""
from dataclasses import dataclass

from core.logger_config import logger
from core.exceptions import LieException, NotLyndon, ParseError

_PARITY_NAMES = {"odd": 1, "even": 0, "1": 1, "0": 0}


@dataclass(frozen=True)
class GradedAlphabet:
    """有序字母表; degree 为 Z/2 次数, weight 为附加的 Z/2 权重 (默认全为0)

    字母都是单个字符, 词在内部表示为字母下标的元组。
    """
    letters: tuple
    degrees: tuple
    weights: tuple = None

    def __post_init__(self):
        if len(set(self.letters)) != len(self.letters):
            raise LieException(f"字母表中有重复字母: {self.letters}")
        if any(len(letter) != 1 or not letter.isalpha() for letter in self.letters):
            raise LieException(f"字母必须是单个字母字符: {self.letters}")
        if len(self.degrees) != len(self.letters):
            raise LieException("次数个数与字母个数不一致")
        if self.weights is None:
            object.__setattr__(self, "weights", (0,) * len(self.letters))
        elif len(self.weights) != len(self.letters):
            raise LieException("权重个数与字母个数不一致")

    @classmethod
    def parse(cls, text, weighted=()):
        """解析 "a:odd,b:even" 形式的字母表"""
        letters, degrees = [], []
        for item in text.split(","):
            name, _, parity = item.strip().partition(":")
            if not name or parity.strip().lower() not in _PARITY_NAMES:
                logger.error(f"无法解析字母表项: {item}")
                raise ParseError(f"无法解析字母表项 '{item}', 期望形如 a:odd")
            letters.append(name.strip())
            degrees.append(_PARITY_NAMES[parity.strip().lower()])
        weights = tuple(1 if letter in weighted else 0 for letter in letters)
        return cls(tuple(letters), tuple(degrees), weights)

    def spec(self):
        return ",".join(f"{x}:{'odd' if d else 'even'}" for x, d in zip(self.letters, self.degrees))

    @property
    def size(self):
        return len(self.letters)

    def index(self, letter):
        try:
            return self.letters.index(letter)
        except ValueError as e:
            raise LieException(f"字母 '{letter}' 不在字母表 {self.letters} 中", e)

    # ---------- 词 ----------
    def word(self, text):
        """字符串转为下标元组"""
        if not text:
            raise LieException("词不能为空")
        return tuple(self.index(letter) for letter in text)

    def format_word(self, word):
        return "".join(self.letters[i] for i in word)

    def multidegree(self, word):
        counts = [0] * self.size
        for i in word:
            counts[i] += 1
        return tuple(counts)

    def parity_of(self, multidegree):
        """(次数, 权重) 均取模2"""
        degree = sum(c * d for c, d in zip(multidegree, self.degrees)) % 2
        weight = sum(c * w for c, w in zip(multidegree, self.weights)) % 2
        return degree, weight

    def commutation_sign(self, x, y):
        """ε(x,y) = (-1)^(|x||y| + w(x)w(y)), x, y 为多重次数"""
        dx, wx = self.parity_of(x)
        dy, wy = self.parity_of(y)
        return -1 if (dx * dy + wx * wy) % 2 else 1

    def multidegree_vector(self, text):
        """解析 "3,2" 形式的多重次数"""
        try:
            counts = tuple(int(part) for part in text.split(","))
        except ValueError as e:
            raise ParseError(f"无法解析多重次数 '{text}'", e)
        if len(counts) != self.size or any(c < 0 for c in counts):
            raise ParseError(f"多重次数 '{text}' 需要 {self.size} 个非负整数")
        return counts


# ========== 括号表达式 ==========
@dataclass(frozen=True)
class Atom:
    """单个字母 (字母下标)"""
    letter: int


@dataclass(frozen=True)
class Bracket:
    """有序对 [left, right]"""
    left: object
    right: object


def foliage(expr):
    """表达式从左到右的叶子"""
    if isinstance(expr, Atom):
        return (expr.letter,)
    return foliage(expr.left) + foliage(expr.right)


def format_expr(expr, alpha):
    if isinstance(expr, Atom):
        return alpha.letters[expr.letter]
    return f"[{format_expr(expr.left, alpha)},{format_expr(expr.right, alpha)}]"


# ========== Lyndon 词 ==========
def duval(word):
    """Duval 算法: 返回 Lyndon 因子分解 w = l1 l2 ... (l1 >= l2 >= ...)"""
    word = tuple(word)
    factors = []
    i, n = 0, len(word)
    while i < n:
        j, k = i + 1, i
        while j < n and word[k] <= word[j]:
            k = i if word[k] < word[j] else k + 1
            j += 1
        while i <= k:
            factors.append(word[i:i + j - k])
            i += j - k
    return factors


def is_lyndon(word):
    """严格小于它的所有非平凡循环移位"""
    word = tuple(word)
    return len(word) > 0 and len(duval(word)) == 1


def lyndon_words(alpha, multidegree):
    """给定字母计数的全部 Lyndon 词, 字典序

    沿前项链 (prenecklace) 深度优先生成并按剩余计数剪枝。
    """
    counts = list(multidegree)
    n = sum(counts)
    if n == 0:
        return []
    k = len(counts)
    a = [0] * (n + 1)
    result = []

    def gen(t, p):
        if t > n:
            if p == n:
                result.append(tuple(a[1:]))
            return
        for j in range(a[t - p], k):
            if counts[j] == 0:
                continue
            a[t] = j
            counts[j] -= 1
            gen(t + 1, p if j == a[t - p] else t)
            counts[j] += 1

    gen(1, 1)
    return result


def standard_factorization(word):
    """w = uv, v 为最小的真后缀"""
    word = tuple(word)
    if not is_lyndon(word) or len(word) < 2:
        raise NotLyndon(f"{word} 不是长度至少为2的 Lyndon 词")
    split = min(range(1, len(word)), key=lambda i: word[i:])
    return word[:split], word[split:]


def standard_bracketing(word):
    """B(w) = [B(u), B(v)], 单个字母映射为自身"""
    word = tuple(word)
    if not is_lyndon(word):
        logger.error(f"{word} 不是 Lyndon 词")
        raise NotLyndon(f"{word} 不是 Lyndon 词")
    if len(word) == 1:
        return Atom(word[0])
    left, right = standard_factorization(word)
    return Bracket(standard_bracketing(left), standard_bracketing(right))
