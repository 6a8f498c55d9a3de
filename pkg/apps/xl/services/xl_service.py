"""
Модуль xl - алгоритм XL над GF(p).

Шаги алгоритма:
1. Multiply: все произведения x^a · f_i степени <= D (матрица Маколея)
2. Linearize: гауссово исключение в порядке XL, мономы от x_1 - последними
3. Solve: одномерные уравнения от x_1 и их корни перебором по GF(p)
4. Repeat: подстановка x_1 = r и рекурсия по оставшимся переменным
"""

import time
from dataclasses import dataclass, field as dc_field
from enum import Enum
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import galois
import numpy as np

from apps.xl.exceptions import (
    BudgetExceeded,
    DTooSmall,
    SearchSpaceTooLarge,
    SufficiencyViolation,
)
from apps.xl.services.field_service import PrimeField
from apps.xl.services.polynomial_service import (
    Monomial,
    Polynomial,
    PolySystem,
    enumerate_monomials,
    evaluate,
    monomial_count,
)
from config.runtime import settings
from logger.logger import setup_logger

logger = setup_logger(module_name=__name__)

Solution = Tuple[int, ...]


@dataclass(frozen=True)
class MacaulayMatrix:
    """
    Матрица Маколея степени D: строки - сдвиги x^a · f_i, столбцы - мономы в порядке XL.

    provenance[r] = (i, shift) - из какого уравнения и каким сдвигом получена строка r.
    """

    field: PrimeField
    n: int
    D: int
    columns: Tuple[Monomial, ...]
    rows: galois.FieldArray
    provenance: Tuple[Tuple[int, Monomial], ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.provenance), len(self.columns)

    @property
    def cells(self) -> int:
        rows, columns = self.shape
        return rows * columns

    @property
    def n_mixed(self) -> int:
        """Число столбцов блока A (мономы с x_2..x_n)."""
        return len(self.columns) - (self.D + 1)

    def row_polynomial(self, index: int) -> Polynomial:
        return _row_to_polynomial(self.field, self.n, self.columns, self.rows[index])


@dataclass(frozen=True)
class EliminationResult:
    """
    Результат приведения матрицы к ступенчатому виду.

    echelon - ненулевые строки приведённой ступенчатой формы, pivots - их
    ведущие столбцы. Строки с ведущим столбцом в блоке x_1 одномерны.
    """

    field: PrimeField
    n: int
    D: int
    columns: Tuple[Monomial, ...]
    rank: int
    echelon: galois.FieldArray
    pivots: Tuple[int, ...]
    n_mixed: int

    @property
    def univariate_rows(self) -> galois.FieldArray:
        indices = [r for r, pivot in enumerate(self.pivots) if pivot >= self.n_mixed]
        return self.echelon[indices]

    def row_polynomial(self, index: int) -> Polynomial:
        return _row_to_polynomial(self.field, self.n, self.columns, self.echelon[index])


class SolveStatus(str, Enum):
    SOLVED = "Solved"
    UNIVARIATE_BUT_NO_ROOTS = "UnivariateButNoRoots"
    NO_UNIVARIATE = "NoUnivariate"


@dataclass(frozen=True)
class SolveOutcome:
    """
    Итог xl_solve: статус, проверенные решения и D по уровням рекурсии.

    witness_degrees[level] - отсортированные значения D, использованные на уровне.
    """

    status: SolveStatus
    solutions: FrozenSet[Solution]
    witness_degrees: Dict[int, Tuple[int, ...]] = dc_field(default_factory=dict)


@dataclass(frozen=True)
class DegreeProbe:
    """Один шаг поиска D: размеры матрицы, ранг, χ(D) и число одномерных строк."""

    D: int
    rows: int
    columns: int
    rank: int
    chi: int
    univariate_count: int
    elapsed_ms: float

    def check_sufficiency(self) -> None:
        """
        Raises:
            SufficiencyViolation: если χ(D) <= D, а одномерного уравнения нет
        """
        if self.chi <= self.D and self.univariate_count == 0:
            raise SufficiencyViolation(self.D, self.chi)


def _row_to_polynomial(
    field: PrimeField, n: int, columns: Sequence[Monomial], row
) -> Polynomial:
    nonzero = np.nonzero(np.asarray(row != 0))[0]
    return Polynomial.from_terms(
        field, n, [(columns[j], int(row[j])) for j in nonzero]
    )


def _check_degree(polys: Sequence[Polynomial], D: int) -> None:
    minimum = 1 + max(poly.degree for poly in polys)
    if D < minimum:
        raise DTooSmall(D, minimum)


def _macaulay(
    field: PrimeField, n: int, polys: Sequence[Polynomial], D: int
) -> MacaulayMatrix:
    _check_degree(polys, D)

    columns = tuple(enumerate_monomials(n, D))
    index = {mono: j for j, mono in enumerate(columns)}

    provenance = []
    for i, poly in enumerate(polys):
        for shift in enumerate_monomials(n, D - poly.degree):
            provenance.append((i, shift))

    entries = np.zeros((len(provenance), len(columns)), dtype=np.int64)
    for r, (i, shift) in enumerate(provenance):
        for mono, coeff in polys[i].terms:
            entries[r, index[mono * shift]] = coeff

    return MacaulayMatrix(
        field=field,
        n=n,
        D=D,
        columns=columns,
        rows=field.GF(entries),
        provenance=tuple(provenance),
    )


def build_macaulay(system: PolySystem, D: int) -> MacaulayMatrix:
    """
    Строит матрицу Маколея: строки x^a · f_i для всех мономов x^a степени
    <= D - deg f_i, столбцы - мономы степени <= D в порядке XL.

    Args:
        system: Система уравнений
        D: Максимальная степень, D >= 1 + max deg f_i

    Returns:
        MacaulayMatrix: Σ C(n + D - deg f_i, n) строк, C(n+D, n) столбцов

    Raises:
        DTooSmall: если D < 1 + max deg f_i
    """
    matrix = _macaulay(system.field, system.n, system.polys, D)
    logger.debug(f"Матрица Маколея D={D}: {matrix.shape[0]}x{matrix.shape[1]}")
    return matrix


def row_reduce(rows: galois.FieldArray) -> Tuple[galois.FieldArray, Tuple[int, ...]]:
    """
    Приведённая ступенчатая форма: ненулевые строки и их ведущие столбцы.

    Ведущие элементы ищутся слева направо по порядку столбцов, столбцы не
    переставляются.
    """
    if rows.shape[0] == 0 or rows.shape[1] == 0:
        return rows[:0], ()

    reduced = rows.row_reduce()
    nonzero = np.any(np.asarray(reduced != 0), axis=1)
    echelon = reduced[nonzero]
    pivots = tuple(int(np.argmax(np.asarray(row != 0))) for row in echelon)
    return echelon, pivots


def echelon_rank(rows: galois.FieldArray) -> int:
    """Ранг матрицы над GF(p)."""
    _, pivots = row_reduce(rows)
    return len(pivots)


def eliminate(matrix: MacaulayMatrix) -> EliminationResult:
    """
    Гауссово исключение над GF(p) в порядке столбцов XL: сначала
    исключаются смешанные мономы, блок 1, x_1, ..., x_1^D - последним.

    Args:
        matrix: Матрица Маколея

    Returns:
        EliminationResult: Ранг, ступенчатый базис и ведущие столбцы
    """
    echelon, pivots = row_reduce(matrix.rows)
    return EliminationResult(
        field=matrix.field,
        n=matrix.n,
        D=matrix.D,
        columns=matrix.columns,
        rank=len(pivots),
        echelon=echelon,
        pivots=pivots,
        n_mixed=matrix.n_mixed,
    )


def chi_measured(system: PolySystem, D: int) -> int:
    """χ(D) = C(n+D, n) - dim V_D."""
    result = eliminate(build_macaulay(system, D))
    return monomial_count(system.n, D) - result.rank


def detect_univariate(result: EliminationResult) -> List[Polynomial]:
    """
    Одномерные многочлены от x_1 из ступенчатого базиса.

    Список непуст тогда и только тогда, когда ранг полной матрицы больше
    ранга матрицы без столбцов 1, x_1, ..., x_1^D.

    Returns:
        List[Polynomial]: Ненулевые многочлены от x_1 (в исходных n переменных)
    """
    return [
        _row_to_polynomial(result.field, result.n, result.columns, row)
        for row in result.univariate_rows
    ]


def univariate_roots(poly: Polynomial, field: Optional[PrimeField] = None) -> FrozenSet[int]:
    """
    Корни одномерного многочлена от x_1 полным перебором по GF(p).

    Args:
        poly: Ненулевой многочлен, зависящий только от x_1
        field: Поле (по умолчанию поле многочлена)

    Returns:
        FrozenSet[int]: Вычеты r с poly(r) = 0
    """
    field = field or poly.field
    if poly.is_zero():
        raise ValueError("Корни нулевого многочлена не определены")
    if not poly.is_univariate_first():
        raise ValueError(f"Многочлен {poly} зависит не только от x1")

    coeffs = [0] * (poly.degree + 1)
    for mono, coeff in poly.terms:
        coeffs[poly.degree - mono.exponents[0]] = coeff

    elements = field.GF.elements
    values = galois.Poly(coeffs, field=field.GF)(elements)
    roots = np.asarray(elements)[np.asarray(values == 0)]
    return frozenset(int(r) for r in roots)


def estimate_cells(system: PolySystem, D: int) -> int:
    """Число ячеек матрицы Маколея степени D без её построения."""
    rows = sum(monomial_count(system.n, D - poly.degree) for poly in system.polys)
    return rows * monomial_count(system.n, D)


# ========================
# Шаги 3-4: корни и рекурсия
# ========================


@dataclass
class _SolveTrace:
    degrees: Dict[int, Set[int]] = dc_field(default_factory=dict)
    no_univariate: bool = False

    def record(self, depth: int, D: int) -> None:
        self.degrees.setdefault(depth, set()).add(D)


def _common_roots(polys: Sequence[Polynomial], field: PrimeField) -> FrozenSet[int]:
    roots: Optional[FrozenSet[int]] = None
    for poly in polys:
        found = univariate_roots(poly, field)
        roots = found if roots is None else roots & found
        if not roots:
            break
    return roots or frozenset()


def _unconstrained(field: PrimeField, n: int) -> Set[Solution]:
    size = field.modulus**n
    if size > settings.unconstrained_limit:
        raise SearchSpaceTooLarge(size, settings.unconstrained_limit)
    return set(product(range(field.modulus), repeat=n))


class XLService:
    """
    Алгоритм XL для одной системы: пробы по степеням, поиск наименьшего D
    и рекурсивное решение.

    budget ограничивает число ячеек каждой матрицы Маколея (None - без предела).
    """

    def __init__(
        self,
        system: PolySystem,
        budget: Optional[int] = None,
        reminimize: bool = False,
    ):
        self.system = system
        self.budget = budget
        self.reminimize = reminimize

    @property
    def minimum_degree(self) -> int:
        return 1 + self.system.d

    def probe(self, D: int) -> DegreeProbe:
        """
        Строит и исключает матрицу степени D.

        Args:
            D: Максимальная степень

        Returns:
            DegreeProbe: Размеры, ранг, χ(D) и число одномерных уравнений

        Raises:
            BudgetExceeded: если матрица больше бюджета
        """
        system = self.system
        if self.budget is not None:
            cells = estimate_cells(system, D)
            if cells > self.budget:
                raise BudgetExceeded(
                    system.field.modulus, system.d, system.n, D, cells, self.budget
                )

        started = time.perf_counter()
        matrix = build_macaulay(system, D)
        result = eliminate(matrix)
        elapsed_ms = (time.perf_counter() - started) * 1000

        rows, columns = matrix.shape
        probe = DegreeProbe(
            D=D,
            rows=rows,
            columns=columns,
            rank=result.rank,
            chi=columns - result.rank,
            univariate_count=len(result.univariate_rows),
            elapsed_ms=elapsed_ms,
        )
        logger.debug(
            f"D={D}: {rows}x{columns}, rank={probe.rank}, χ={probe.chi}, "
            f"одномерных={probe.univariate_count}"
        )
        return probe

    def probes(self, D_cap: int, start: Optional[int] = None) -> Iterator[DegreeProbe]:
        """Пробы для D = max(start, 1 + max deg) .. D_cap по возрастанию."""
        first = self.minimum_degree if start is None else max(start, self.minimum_degree)
        for D in range(first, D_cap + 1):
            yield self.probe(D)

    def find_min_d(self, D_cap: int, start: Optional[int] = None) -> Optional[int]:
        """
        Наименьшее D из [1 + max deg, D_cap], при котором исключение даёт
        одномерное уравнение от x_1 (наличие корней не требуется).

        Returns:
            Optional[int]: D или None, если граница исчерпана
        """
        if D_cap < self.minimum_degree:
            raise DTooSmall(D_cap, self.minimum_degree)

        for probe in self.probes(D_cap, start=start):
            if probe.univariate_count:
                return probe.D

        logger.info(f"⚠️ Одномерное уравнение не найдено при D <= {D_cap}")
        return None

    def _solve_level(
        self,
        n: int,
        polys: Tuple[Polynomial, ...],
        D: int,
        depth: int,
        trace: _SolveTrace,
    ) -> Optional[Set[Solution]]:
        """
        Решения на одном уровне рекурсии или None, если одномерные уравнения
        есть, но общих корней у них нет (на верхнем уровне это отдельный статус).
        """
        field = self.system.field
        _check_degree(polys, D)

        if n == 1:
            trace.record(depth, D)
            roots = _common_roots(polys, field)
            return {(r,) for r in roots} if roots else None

        # на подуровнях система может быть недоопределённой, поэтому без PolySystem
        if self.reminimize and depth > 0:
            first_D = 1 + max(poly.degree for poly in polys)
        else:
            first_D = D
        univariate: List[Polynomial] = []
        for level_D in range(first_D, D + 1):
            univariate = detect_univariate(eliminate(_macaulay(field, n, polys, level_D)))
            if univariate:
                break

        trace.record(depth, level_D)
        if not univariate:
            trace.no_univariate = True
            logger.debug(f"Уровень {depth}: одномерных уравнений при D={level_D} нет")
            return set()

        roots = _common_roots(univariate, field)
        if not roots:
            return None

        solutions: Set[Solution] = set()
        for r in sorted(roots):
            reduced = tuple(
                sub for sub in (poly.substitute_first(r) for poly in polys) if not sub.is_zero()
            )
            if not reduced:
                tail = _unconstrained(field, n - 1)
            else:
                tail = self._solve_level(n - 1, reduced, D, depth + 1, trace) or set()
            solutions.update((r, *rest) for rest in tail)
        return solutions

    def _verifies(self, point: Solution) -> bool:
        return all(evaluate(poly, point) == 0 for poly in self.system.polys)

    def solve(self, D: int) -> SolveOutcome:
        """
        Решает систему с максимальной степенью D.

        Корни всех найденных одномерных уравнений пересекаются; для каждого
        корня r подставляется x_1 = r и процесс повторяется для x_2, ... с тем же
        D (с reminimize - с наименьшим подходящим D не больше заданного).
        Каждое найденное решение проверяется на исходной системе.

        Raises:
            DTooSmall: если D < 1 + max deg
        """
        system = self.system
        logger.info(
            f"🚀 XL: n={system.n}, {len(system.polys)} уравнений над {system.field}, D={D}"
        )
        trace = _SolveTrace()
        found = self._solve_level(system.n, system.polys, D, 0, trace)

        if found is None:
            status = SolveStatus.UNIVARIATE_BUT_NO_ROOTS
            found = set()
        elif trace.no_univariate:
            status = SolveStatus.NO_UNIVARIATE
        else:
            status = SolveStatus.SOLVED

        verified = frozenset(point for point in found if self._verifies(point))
        if len(verified) != len(found):
            logger.error(
                f"❌ {len(found) - len(verified)} кандидатов не прошли проверку и отброшены"
            )

        logger.info(f"✅ XL: статус {status.value}, решений {len(verified)}")
        return SolveOutcome(
            status=status,
            solutions=verified,
            witness_degrees={
                depth: tuple(sorted(values)) for depth, values in sorted(trace.degrees.items())
            },
        )


def probe_degree(
    system: PolySystem, D: int, budget: Optional[int] = None
) -> DegreeProbe:
    """Удобная функция: одна проба степени D."""
    return XLService(system, budget=budget).probe(D)


def iter_probes(
    system: PolySystem,
    D_cap: int,
    start: Optional[int] = None,
    budget: Optional[int] = None,
) -> Iterator[DegreeProbe]:
    return XLService(system, budget=budget).probes(D_cap, start=start)


def find_min_d(
    system: PolySystem,
    D_cap: int,
    start: Optional[int] = None,
    budget: Optional[int] = None,
) -> Optional[int]:
    """
    Удобная функция: наименьшее D с одномерным уравнением.

    Args:
        system: Система уравнений
        D_cap: Верхняя граница поиска
        start: Начать перебор не раньше этого D
        budget: Предел числа ячеек матрицы

    Returns:
        Optional[int]: D или None, если граница исчерпана
    """
    return XLService(system, budget=budget).find_min_d(D_cap, start=start)


def xl_solve(system: PolySystem, D: int, reminimize: bool = False) -> SolveOutcome:
    """
    Удобная функция: решить систему алгоритмом XL.

    Args:
        system: Система уравнений
        D: Максимальная степень, D >= 1 + max deg
        reminimize: На подуровнях искать наименьшее D заново (не больше D)

    Returns:
        SolveOutcome: Статус и множество решений
    """
    return XLService(system, reminimize=reminimize).solve(D)
