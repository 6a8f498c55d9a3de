"""
Модуль polynomial - мономы и многочлены над GF(p).

Содержит порядок исключения XL (мономы от одного x_1 исключаются последними),
перечисление мономов, вычисление значений, генерацию случайных и "засеянных"
систем, а также текстовый формат систем для командной строки.
"""

import re
from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from apps.xl.exceptions import DimensionMismatch, ParseError, XLError
from apps.xl.services.field_service import ElementLike, PrimeField, make_field
from logger.logger import setup_logger

logger = setup_logger(module_name=__name__)

# Показатели упаковываются в байты
MAX_EXPONENT = 255


@dataclass(frozen=True)
class Monomial:
    """
    Моном x_1^e_1 * ... * x_n^e_n, заданный вектором показателей.
    """

    exponents: Tuple[int, ...]
    degree: int = dc_field(init=False, compare=False, repr=False)

    def __post_init__(self):
        exponents = tuple(int(e) for e in self.exponents)
        if any(e < 0 or e > MAX_EXPONENT for e in exponents):
            raise ValueError(
                f"Показатели монома должны лежать в [0, {MAX_EXPONENT}]: {exponents}"
            )
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "degree", sum(exponents))

    def __hash__(self) -> int:
        return hash(self.packed)

    @property
    def packed(self) -> bytes:
        return bytes(self.exponents)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def variable(cls, n: int, index: int, power: int = 1) -> "Monomial":
        """Моном x_{index+1}^power (индексация переменных с нуля)."""
        exponents = [0] * n
        exponents[index] = power
        return cls(tuple(exponents))

    def is_pure_first(self) -> bool:
        """True, если моном зависит только от x_1 (включая константу 1)."""
        return not any(self.exponents[1:])

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.n != other.n:
            raise DimensionMismatch(
                f"Мономы от разного числа переменных: {self.n} и {other.n}"
            )
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def value(self, residues: Sequence[int], modulus: int) -> int:
        """Значение монома в точке (вычеты) по модулю p, 0^0 = 1."""
        result = 1
        for base, e in zip(residues, self.exponents):
            if e:
                result = result * pow(base, e, modulus) % modulus
        return result


def xl_key(mono: Monomial) -> Tuple:
    """
    Ключ сортировки порядка XL.

    Блок A (мономы с x_2..x_n) идёт первым: по степени, затем лексикографически
    по показателям, читая от x_n к x_1. Блок B (1, x_1, ..., x_1^D) идёт
    последним по возрастанию степени.
    """
    block = 1 if mono.is_pure_first() else 0
    return (block, mono.degree, tuple(reversed(mono.exponents)))


@dataclass(frozen=True)
class XLOrder:
    """
    Полный порядок на мономах степени <= D, в котором мономы от одного x_1
    исключаются последними.
    """

    n: int
    D: int

    def key(self, mono: Monomial) -> Tuple:
        return xl_key(mono)

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0 или 1 в зависимости от того, идёт ли a раньше b."""
        key_a, key_b = self.key(a), self.key(b)
        return (key_a > key_b) - (key_a < key_b)

    def sort(self, monomials: Iterable[Monomial]) -> List[Monomial]:
        return sorted(monomials, key=self.key)


def enumerate_monomials(
    n: int, D: int, order: Optional[XLOrder] = None
) -> List[Monomial]:
    """
    Перечисляет все мономы от n переменных степени <= D в порядке XL.

    Args:
        n: Число переменных, n >= 1
        D: Максимальная степень, D >= 0
        order: Порядок исключения (по умолчанию XLOrder(n, D))

    Returns:
        List[Monomial]: C(n+D, n) мономов; последние D+1 - это 1, x_1, ..., x_1^D
    """
    if n < 1 or D < 0:
        raise ValueError(f"Нужно n >= 1 и D >= 0, получено n={n}, D={D}")

    order = order or XLOrder(n, D)
    monomials = []
    for degree in range(D + 1):
        for variables in combinations_with_replacement(range(n), degree):
            exponents = [0] * n
            for index in variables:
                exponents[index] += 1
            monomials.append(Monomial(tuple(exponents)))

    return order.sort(monomials)


@dataclass(frozen=True)
class Polynomial:
    """
    Многочлен над GF(p): упорядоченный список термов (моном, ненулевой вычет).

    Термы хранятся по убыванию порядка XL, нулевые коэффициенты не хранятся.
    """

    field: PrimeField
    n: int
    terms: Tuple[Tuple[Monomial, int], ...]

    @classmethod
    def from_terms(
        cls, field: PrimeField, n: int, terms: Mapping[Monomial, int] | Iterable
    ) -> "Polynomial":
        """
        Собирает многочлен, приводя коэффициенты по модулю p и отбрасывая нули.

        Args:
            field: Поле коэффициентов
            n: Число переменных
            terms: Словарь {моном: коэффициент} или пары (моном, коэффициент)

        Returns:
            Polynomial: Нормализованный многочлен
        """
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: Dict[Monomial, int] = {}
        for mono, coeff in items:
            if mono.n != n:
                raise DimensionMismatch(
                    f"Моном {mono.exponents} не от {n} переменных"
                )
            merged[mono] = (merged.get(mono, 0) + int(coeff)) % field.modulus

        ordered = sorted(
            ((mono, c) for mono, c in merged.items() if c),
            key=lambda term: xl_key(term[0]),
            reverse=True,
        )
        return cls(field=field, n=n, terms=tuple(ordered))

    @classmethod
    def constant(cls, field: PrimeField, n: int, value: int) -> "Polynomial":
        return cls.from_terms(field, n, {Monomial.one(n): value})

    @property
    def degree(self) -> int:
        """Полная степень; у нулевого многочлена -1."""
        return max((mono.degree for mono, _ in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    def coefficient(self, mono: Monomial) -> int:
        return self.as_dict().get(mono, 0)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial.from_terms(
            self.field, self.n, [(m, c) for m, c in self.terms if m.degree == degree]
        )

    def is_univariate_first(self) -> bool:
        """True, если многочлен зависит только от x_1."""
        return all(mono.is_pure_first() for mono, _ in self.terms)

    def add(self, other: "Polynomial") -> "Polynomial":
        _check_compatible(self, other)
        return Polynomial.from_terms(self.field, self.n, self.terms + other.terms)

    def shift_constant(self, value: ElementLike) -> "Polynomial":
        """Возвращает f - value (корректировка свободного члена)."""
        return Polynomial.from_terms(
            self.field,
            self.n,
            self.terms + ((Monomial.one(self.n), -self.field.residue(value)),),
        )

    def substitute_first(self, value: ElementLike) -> "Polynomial":
        """
        Подставляет x_1 = value; результат - многочлен от n-1 переменных,
        в котором x_2 становится новым x_1.
        """
        if self.n < 2:
            raise DimensionMismatch("Подстановка x_1 требует хотя бы двух переменных")
        p = self.field.modulus
        r = self.field.residue(value)
        reduced = []
        for mono, coeff in self.terms:
            factor = pow(r, mono.exponents[0], p)
            reduced.append((Monomial(mono.exponents[1:]), coeff * factor))
        return Polynomial.from_terms(self.field, self.n - 1, reduced)

    def __str__(self) -> str:
        return format_polynomial(self)


def _check_compatible(left: Polynomial, right: Polynomial) -> None:
    if left.n != right.n or left.field != right.field:
        raise DimensionMismatch(
            f"Несовместимые многочлены: n={left.n}/{right.n}, "
            f"{left.field}/{right.field}"
        )


def multiply(poly: Polynomial, mono: Monomial) -> Polynomial:
    """
    Умножает многочлен на моном (шаг Multiply алгоритма XL).

    Args:
        poly: Многочлен f_i
        mono: Моном-сдвиг

    Returns:
        Polynomial: mono * f_i, коэффициенты те же, степени сложены
    """
    if mono.n != poly.n:
        raise DimensionMismatch(
            f"Моном от {mono.n} переменных, многочлен от {poly.n}"
        )
    return Polynomial.from_terms(
        poly.field, poly.n, [(term * mono, coeff) for term, coeff in poly.terms]
    )


def evaluate(poly: Polynomial, point: Sequence[ElementLike]):
    """
    Вычисляет значение многочлена в точке: Σ c · Π x_i^e_i.

    Args:
        poly: Многочлен
        point: Вектор из n элементов поля (или целых)

    Returns:
        FieldElement: Значение в GF(p)

    Raises:
        DimensionMismatch: если длина точки не равна n
    """
    if len(point) != poly.n:
        raise DimensionMismatch(
            f"Точка длины {len(point)}, а многочлен от {poly.n} переменных"
        )
    p = poly.field.modulus
    residues = [poly.field.residue(x) for x in point]
    total = 0
    for mono, coeff in poly.terms:
        total = (total + coeff * mono.value(residues, p)) % p
    return poly.field(total)


def monomial_value(mono: Monomial, point: Sequence[ElementLike], field: PrimeField):
    """Значение отдельного монома в точке."""
    if len(point) != mono.n:
        raise DimensionMismatch(
            f"Точка длины {len(point)}, а моном от {mono.n} переменных"
        )
    residues = [field.residue(x) for x in point]
    return field(mono.value(residues, field.modulus))


@dataclass(frozen=True)
class PolySystem:
    """
    Система f_1 = ... = f_{n+c} = 0 от n переменных над GF(p).
    """

    field: PrimeField
    n: int
    polys: Tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        if not self.polys:
            raise ValueError("Система должна содержать хотя бы один многочлен")
        for poly in self.polys:
            if poly.n != self.n or poly.field != self.field:
                raise DimensionMismatch(
                    f"Многочлен от {poly.n} переменных над {poly.field} "
                    f"в системе от {self.n} переменных над {self.field}"
                )
            if poly.is_zero():
                raise ValueError("Нулевой многочлен в системе")
        # Одно уравнение допускается только в одномерном случае
        if self.c < 1 and self.n != 1:
            raise ValueError(
                f"Система должна быть переопределённой: {len(self.polys)} "
                f"уравнений на {self.n} переменных"
            )

    @property
    def c(self) -> int:
        return len(self.polys) - self.n

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(poly.degree for poly in self.polys)

    @property
    def d(self) -> int:
        """Общая степень (максимальная, если степени разные)."""
        return max(self.degrees)

    def is_equal_degree(self) -> bool:
        return len(set(self.degrees)) == 1


def random_system(
    n: int, c: int, d: int, field: PrimeField, seed: Optional[int] = None
) -> PolySystem:
    """
    Генерирует плотную случайную систему из n+c многочленов степени d.

    Каждый моном степени <= d получает независимый равномерный коэффициент
    из GF(p); многочлен перевыбирается, если его однородная часть степени d
    оказалась нулевой.

    Args:
        n: Число переменных, n >= 1
        c: Превышение числа уравнений над числом переменных, c >= 1
        d: Степень, d >= 2
        field: Поле коэффициентов
        seed: Зерно генератора numpy

    Returns:
        PolySystem: Детерминированная по seed система
    """
    return SystemService(field, seed=seed).random(n, c, d)


def plant_solution(system: PolySystem, point: Sequence[ElementLike]) -> PolySystem:
    """
    Засеивает общий корень: каждый f_i заменяется на f_i - f_i(point).

    Args:
        system: Исходная система
        point: Точка из GF(p)^n

    Returns:
        PolySystem: Система, обращающаяся в ноль в point
    """
    if len(point) != system.n:
        raise DimensionMismatch(
            f"Точка длины {len(point)}, а система от {system.n} переменных"
        )
    planted = []
    for poly in system.polys:
        shifted = poly.shift_constant(evaluate(poly, point))
        if shifted.is_zero():
            raise XLError("После засеивания многочлен обратился в ноль")
        planted.append(shifted)
    return PolySystem(field=system.field, n=system.n, polys=tuple(planted))


class SystemService:
    """
    Генератор систем над одним полем с общим генератором numpy: последовательные
    вызовы random() дают разные системы, но вся последовательность задаётся seed.
    """

    def __init__(self, field: PrimeField, seed: Optional[int] = None):
        self.field = field
        self.rng = np.random.default_rng(seed)

    def random(self, n: int, c: int, d: int) -> PolySystem:
        """Плотная случайная система из n+c многочленов степени ровно d."""
        if n < 1 or c < 1 or d < 2:
            raise ValueError(f"Нужно n >= 1, c >= 1, d >= 2; получено n={n}, c={c}, d={d}")

        monomials = enumerate_monomials(n, d)
        polys = []
        for _ in range(n + c):
            while True:
                coeffs = self.rng.integers(0, self.field.modulus, size=len(monomials))
                poly = Polynomial.from_terms(
                    self.field, n, zip(monomials, (int(value) for value in coeffs))
                )
                if not poly.homogeneous_part(d).is_zero():
                    break
                logger.debug("Старшая однородная часть обнулилась, перевыбираем многочлен")
            polys.append(poly)

        return PolySystem(field=self.field, n=n, polys=tuple(polys))

    def planted(
        self, n: int, c: int, d: int, point: Sequence[ElementLike]
    ) -> PolySystem:
        """Случайная система с засеянным корнем point."""
        return plant_solution(self.random(n, c, d), point)


def monomial_count(n: int, D: int) -> int:
    """Число мономов степени <= D от n переменных: C(n+D, n)."""
    return comb(n + D, n)


# ========================
# Текстовый формат
# ========================

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_VARIABLE_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_HEADER_RE = re.compile(r"^p\s*=\s*(\d+)\s+n\s*=\s*(\d+)$")


def parse_polynomial(text: str, field: PrimeField, n: int) -> Polynomial:
    """
    Разбирает многочлен вида `c*x1^a1*...*xn^an + ...`.

    Допускаются знак минус, пропущенный коэффициент (1) и пропущенный
    показатель (1); `0` - нулевой многочлен.

    Args:
        text: Текст многочлена
        field: Поле коэффициентов
        n: Число переменных

    Returns:
        Polynomial: Разобранный многочлен

    Raises:
        ParseError: при неизвестной лексеме или индексе переменной вне 1..n
    """
    compact = "".join(text.split())
    if not compact:
        raise ParseError("Пустая строка вместо многочлена")

    matches = list(_TERM_RE.finditer(compact))
    if "".join(match.group(0) for match in matches) != compact:
        raise ParseError(f"Не удалось разобрать многочлен: {text!r}")

    terms = []
    for match in matches:
        sign = -1 if match.group(1) == "-" else 1
        coeff = sign
        exponents = [0] * n
        for factor in match.group(2).split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            variable = _VARIABLE_RE.match(factor)
            if not variable:
                raise ParseError(f"Неизвестная лексема {factor!r} в {text!r}")
            index = int(variable.group(1))
            if not 1 <= index <= n:
                raise ParseError(f"Переменная x{index} вне диапазона x1..x{n}")
            exponents[index - 1] += int(variable.group(2) or 1)
        try:
            terms.append((Monomial(tuple(exponents)), coeff))
        except ValueError as e:
            raise ParseError(str(e)) from e

    return Polynomial.from_terms(field, n, terms)


def format_polynomial(poly: Polynomial) -> str:
    """Текст многочлена в грамматике `c*x1^a1*...*xn^an`, термы через ` + `."""
    if poly.is_zero():
        return "0"

    parts = []
    for mono, coeff in poly.terms:
        factors = [
            f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
            for i, e in enumerate(mono.exponents)
            if e
        ]
        if not factors:
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(coeff)] + factors))
    return " + ".join(parts)


def parse_system(text: str) -> PolySystem:
    """
    Разбирает файл системы: заголовок `p=<простое> n=<переменные>`,
    затем по одному многочлену на строку. Пустые строки и `#` игнорируются.

    Raises:
        ParseError: при ошибке в заголовке, многочлене или составе системы
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("Пустой файл системы")

    header = _HEADER_RE.match(lines[0])
    if not header:
        raise ParseError(f"Ожидался заголовок 'p=<prime> n=<vars>', получено {lines[0]!r}")
    p, n = int(header.group(1)), int(header.group(2))
    if n < 1:
        raise ParseError("Число переменных должно быть положительным")

    try:
        field = make_field(p)
    except XLError as e:
        raise ParseError(str(e)) from e

    polys = [parse_polynomial(line, field, n) for line in lines[1:]]
    try:
        system = PolySystem(field=field, n=n, polys=tuple(polys))
    except ValueError as e:
        raise ParseError(str(e)) from e

    logger.debug(f"Разобрана система: {len(polys)} уравнений, n={n}, {field}")
    return system


def format_system(system: PolySystem) -> str:
    lines = [f"p={system.field.modulus} n={system.n}"]
    lines.extend(format_polynomial(poly) for poly in system.polys)
    return "\n".join(lines) + "\n"
