"""
Модуль oracle - независимые эталоны для проверок.

Ни одна функция здесь не использует galois и код исключения из xl_service:
перебор и ранг считаются на векторах numpy int64 по модулю p, ряды - прямым
перемножением многочленов.
"""

import time
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from apps.xl.exceptions import SearchSpaceTooLarge
from apps.xl.services.polynomial_service import PolySystem
from config.runtime import settings
from logger.logger import setup_logger

logger = setup_logger(module_name=__name__)

# Точек GF(p)^n за один проход
CHUNK_SIZE = 1 << 16


@dataclass(frozen=True)
class OracleReport:
    """Результат полного перебора: решения, время в секундах и число точек (p^n)."""

    solutions: FrozenSet[Tuple[int, ...]]
    elapsed: float
    searched: int


def _chunk_values(system: PolySystem, points: np.ndarray) -> np.ndarray:
    # True там, где все многочлены обращаются в ноль
    p = system.field.modulus
    max_exponent = max(
        (max(mono.exponents) for poly in system.polys for mono, _ in poly.terms),
        default=0,
    )

    powers = np.ones((max_exponent + 1, *points.shape), dtype=np.int64)
    for e in range(1, max_exponent + 1):
        powers[e] = powers[e - 1] * points % p

    alive = np.ones(points.shape[0], dtype=bool)
    for poly in system.polys:
        total = np.zeros(points.shape[0], dtype=np.int64)
        for mono, coeff in poly.terms:
            term = np.full(points.shape[0], coeff, dtype=np.int64)
            for i, e in enumerate(mono.exponents):
                if e:
                    term = term * powers[e, :, i] % p
            total = (total + term) % p
        alive &= total == 0
    return alive


class ExhaustiveSearchService:
    """
    Полный перебор GF(p)^n порциями по CHUNK_SIZE точек.

    limit - предел p^n (по умолчанию XL_EXHAUSTIVE_LIMIT).
    """

    def __init__(self, limit: Optional[int] = None):
        self.limit = settings.exhaustive_limit if limit is None else limit

    def check_size(self, system: PolySystem) -> int:
        size = system.field.modulus**system.n
        if size > self.limit:
            raise SearchSpaceTooLarge(size, self.limit)
        return size

    def solve(self, system: PolySystem) -> OracleReport:
        """
        Находит все общие корни системы.

        Returns:
            OracleReport: Множество решений (кортежи вычетов)

        Raises:
            SearchSpaceTooLarge: если p^n больше предела
        """
        size = self.check_size(system)
        p, n = system.field.modulus, system.n

        started = time.perf_counter()
        place = p ** np.arange(n, dtype=np.int64)
        solutions = set()
        for start in range(0, size, CHUNK_SIZE):
            index = np.arange(start, min(start + CHUNK_SIZE, size), dtype=np.int64)
            # i-я координата - i-я цифра номера точки в системе счисления по основанию p
            points = index[:, None] // place[None, :] % p
            for point in points[_chunk_values(system, points)]:
                solutions.add(tuple(int(x) for x in point))

        elapsed = time.perf_counter() - started
        logger.debug(f"Перебор {size} точек: {len(solutions)} решений за {elapsed:.3f} с")
        return OracleReport(solutions=frozenset(solutions), elapsed=elapsed, searched=size)


def exhaustive_solve(system: PolySystem, limit: Optional[int] = None) -> OracleReport:
    """Удобная функция: все решения системы полным перебором."""
    return ExhaustiveSearchService(limit).solve(system)


def rank_reference(rows, modulus: int) -> int:
    """
    Ранг матрицы над GF(p) прямым ходом исключения по транспонированной
    матрице (ранг строк равен рангу столбцов).

    Args:
        rows: Матрица вычетов (список списков, ndarray или FieldArray)
        modulus: Простой модуль p < 2^31

    Returns:
        int: Ранг
    """
    matrix = np.array(np.asarray(rows).view(np.ndarray), dtype=np.int64) % modulus
    if matrix.ndim != 2 or matrix.size == 0:
        return 0

    work = matrix.T.copy()
    height, width = work.shape
    rank = 0
    for j in range(width):
        if rank == height:
            break
        candidates = np.nonzero(work[rank:, j])[0]
        if candidates.size == 0:
            continue
        pivot = rank + int(candidates[0])
        work[[rank, pivot]] = work[[pivot, rank]]
        work[rank] = work[rank] * pow(int(work[rank, j]), -1, modulus) % modulus
        below = work[rank + 1 :, j].copy()
        work[rank + 1 :] = (work[rank + 1 :] - np.outer(below, work[rank])) % modulus
        rank += 1
    return rank


def om_series_oracle(N: int, s: int, D_max: Optional[int] = None) -> List[int]:
    """
    Коэффициенты (1 + T + ... + T^s)^N прямым перемножением N раз.

    Args:
        N: Показатель, N >= 0
        s: Старшая степень основания, s >= 0
        D_max: Усечение (по умолчанию полная длина sN+1)

    Returns:
        List[int]: Коэффициенты при T^0..T^{D_max}
    """
    if N < 0 or s < 0:
        raise ValueError(f"Нужно N >= 0 и s >= 0, получено N={N}, s={s}")

    coeffs = [1]
    for _ in range(N):
        step = [0] * (len(coeffs) + s)
        for i, a in enumerate(coeffs):
            for m in range(s + 1):
                step[i + m] += a
        coeffs = step

    if D_max is None:
        return coeffs
    return coeffs[: D_max + 1] + [0] * max(0, D_max + 1 - len(coeffs))
