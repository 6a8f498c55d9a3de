"""
Модуль multinomial - обыкновенные мультиномиальные коэффициенты ⟨N k⟩_s.

⟨N k⟩_s - коэффициент при T^k в (1 + T + ... + T^s)^N. Все значения - точные
целые Python: уже при N≈30, s≈4 они не помещаются в 64 бита.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from math import comb
from typing import List, Optional, Tuple

from apps.xl.exceptions import UnimodalityViolation
from logger.logger import setup_logger

logger = setup_logger(module_name=__name__)


@dataclass(frozen=True)
class OrdinaryMultinomialRow:
    """
    Строка треугольника ⟨N k⟩_s для k = 0..sN.
    """

    N: int
    s: int
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.s * self.N + 1:
            raise ValueError(
                f"Строка N={self.N}, s={self.s} должна иметь длину {self.s * self.N + 1}"
            )

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.values):
            return self.values[k]
        return 0

    def __len__(self) -> int:
        return len(self.values)

    def is_consistent(self) -> bool:
        """Проверяет крайние единицы, симметрию и сумму (s+1)^N."""
        return (
            self.values[0] == 1
            and self.values[-1] == 1
            and self.values == self.values[::-1]
            and sum(self.values) == (self.s + 1) ** self.N
        )


@dataclass(frozen=True)
class UnimodalityReport:
    """Результат проверки строгой унимодальности строки."""

    N: int
    s: int
    strictly_rising_until: int
    plateau: bool
    peak: int


@dataclass(frozen=True)
class ThresholdReport:
    """
    Наименьшее k, при котором коэффициент (или разность для c=2) не больше k.

    agrees сравнивает перебор с замкнутой формулой; без формулы расхождений нет.
    """

    N: int
    s: int
    c: int
    k_scanned: int
    k_closed_form: Optional[int]
    agrees: bool


def _check_arguments(N: int, s: int) -> None:
    if N < 0 or s < 0:
        raise ValueError(f"Нужно N >= 0 и s >= 0, получено N={N}, s={s}")


@lru_cache(maxsize=512)
def _row_values(N: int, s: int) -> Tuple[int, ...]:
    # ⟨N k⟩_s = Σ_{m=0}^{s} ⟨N-1, k-m⟩_s через префиксные суммы предыдущей строки
    row: Tuple[int, ...] = (1,)
    for _ in range(N):
        prefix = (0, *accumulate(row))
        width = len(row)
        row = tuple(
            prefix[min(k, width - 1) + 1] - prefix[max(0, k - s)]
            for k in range(width + s)
        )
    return row


def om(N: int, k: int, s: int) -> int:
    """
    Обыкновенный мультиномиальный коэффициент ⟨N k⟩_s.

    Args:
        N: Показатель степени, N >= 0
        k: Номер коэффициента (любое целое)
        s: Старшая степень T в основании, s >= 0

    Returns:
        int: Коэффициент; 0 при k < 0 или k > sN
    """
    _check_arguments(N, s)
    if k < 0 or k > s * N:
        return 0
    return _row_values(N, s)[k]


def om_alternating(N: int, k: int, s: int) -> int:
    """
    ⟨N k⟩_s по знакопеременной формуле из разложения (1-T^{s+1})^N / (1-T)^N.

    Независимая от рекуррентности проверка.
    """
    _check_arguments(N, s)
    if k < 0 or k > s * N:
        return 0
    if N == 0:
        return 1 if k == 0 else 0

    total = 0
    for i in range(k // (s + 1) + 1):
        rest = k - i * (s + 1)
        total += (-1) ** i * comb(N, i) * comb(rest + N - 1, rest)
    return total


def om_convolution(N: int, k: int, s: int) -> int:
    """
    ⟨N k⟩_s = Σ_m C(N, m) ⟨m, k-m⟩_{s-1} - свёртка с биномиальными коэффициентами.
    """
    _check_arguments(N, s)
    if s == 0:
        return 1 if k == 0 else 0
    return sum(comb(N, m) * om(m, k - m, s - 1) for m in range(N + 1))


def om_tail(N: int, k: int, s: int) -> int:
    """Хвост строки: ⟨N k⟩_s = C((s+1)N-k-1, sN-k) при s(N-1) <= k <= sN."""
    if N < 1 or not s * (N - 1) <= k <= s * N:
        raise ValueError(f"Формула хвоста требует s(N-1) <= k <= sN, получено k={k}")
    return comb((s + 1) * N - k - 1, s * N - k)


def om_row(N: int, s: int) -> OrdinaryMultinomialRow:
    """
    Полная строка ⟨N k⟩_s, k = 0..sN.

    Args:
        N: N >= 0
        s: s >= 1

    Returns:
        OrdinaryMultinomialRow: Строка треугольника
    """
    if s < 1:
        raise ValueError(f"Строка строится для s >= 1, получено s={s}")
    _check_arguments(N, s)
    return OrdinaryMultinomialRow(N=N, s=s, values=_row_values(N, s))


def check_strong_unimodality(row: OrdinaryMultinomialRow) -> UnimodalityReport:
    """
    Проверяет строгую унимодальность: строгий рост до ⌊sN/2⌋, равенство
    значений в ⌊sN/2⌋ и ⌈sN/2⌉, строгое убывание после.

    Args:
        row: Строка с N >= 2

    Returns:
        UnimodalityReport: Мода ⌊sN/2⌋ и наличие плато (sN нечётно)

    Raises:
        UnimodalityViolation: если хотя бы одно неравенство нарушено
    """
    if row.N < 2:
        raise ValueError(f"Утверждение о строгой унимодальности требует N >= 2, N={row.N}")

    top = row.s * row.N
    low_mode, high_mode = top // 2, (top + 1) // 2
    values = row.values

    for k in range(low_mode):
        if not values[k] < values[k + 1]:
            raise UnimodalityViolation(
                f"N={row.N}, s={row.s}: нет строгого роста в k={k} "
                f"({values[k]} >= {values[k + 1]})"
            )
    if values[low_mode] != values[high_mode]:
        raise UnimodalityViolation(
            f"N={row.N}, s={row.s}: значения в модах {low_mode} и {high_mode} различны"
        )
    for k in range(high_mode, top):
        if not values[k] > values[k + 1]:
            raise UnimodalityViolation(
                f"N={row.N}, s={row.s}: нет строгого убывания в k={k} "
                f"({values[k]} <= {values[k + 1]})"
            )

    return UnimodalityReport(
        N=row.N,
        s=row.s,
        strictly_rising_until=low_mode,
        plateau=top % 2 == 1,
        peak=values[low_mode],
    )


def closed_form_c1(N: int, s: int) -> Optional[int]:
    """
    Замкнутая формула порога для c=1: N при s=1, sN-1 при 2 <= s < (N+1)/2 + 2/N.
    """
    if s == 1:
        return N
    # s < (N+1)/2 + 2/N  <=>  2sN < N(N+1) + 4
    if s >= 2 and 2 * s * N < N * (N + 1) + 4:
        return s * N - 1
    return None


def closed_form_c2(N: int, s: int) -> int:
    """Замкнутая формула порога для c=2: s+1 (N=2), 2s (N=3), ⌊s(N+1)/2⌋+1 (N>=4)."""
    if N == 2:
        return s + 1
    if N == 3:
        return 2 * s
    return s * (N + 1) // 2 + 1


def smallest_k_c1(N: int, s: int) -> ThresholdReport:
    """
    Наименьшее k с ⟨N k⟩_s <= k: перебор по возрастанию k и замкнутая формула.

    Args:
        N: N >= 1
        s: s >= 1

    Returns:
        ThresholdReport: Результат перебора и сравнения с формулой
    """
    if N < 1 or s < 1:
        raise ValueError(f"Нужно N >= 1 и s >= 1, получено N={N}, s={s}")

    k = 0
    while om(N, k, s) > k:
        k += 1

    closed = closed_form_c1(N, s)
    report = ThresholdReport(
        N=N,
        s=s,
        c=1,
        k_scanned=k,
        k_closed_form=closed,
        agrees=closed is None or closed == k,
    )
    logger.debug(f"Порог c=1 для N={N}, s={s}: k={k} (формула {closed})")
    return report


def smallest_k_c2(N: int, s: int) -> ThresholdReport:
    """
    Наименьшее k с ⟨N k⟩_s - ⟨N, k-(s+1)⟩_s <= k.

    Args:
        N: N >= 2
        s: s >= 1

    Returns:
        ThresholdReport: Результат перебора и сравнения с формулой
    """
    if N < 2 or s < 1:
        raise ValueError(f"Нужно N >= 2 и s >= 1, получено N={N}, s={s}")

    k = 0
    while om(N, k, s) - om(N, k - (s + 1), s) > k:
        k += 1

    closed = closed_form_c2(N, s)
    report = ThresholdReport(
        N=N,
        s=s,
        c=2,
        k_scanned=k,
        k_closed_form=closed,
        agrees=closed == k,
    )
    logger.debug(f"Порог c=2 для N={N}, s={s}: k={k} (формула {closed})")
    return report


class MultinomialService:
    """
    Треугольник ⟨N k⟩_s для фиксированного s: строки, проверка
    унимодальности и пороги c=1, c=2.
    """

    def __init__(self, s: int):
        if s < 1:
            raise ValueError(f"Треугольник строится для s >= 1, получено s={s}")
        self.s = s

    def coefficient(self, N: int, k: int) -> int:
        return om(N, k, self.s)

    def row(self, N: int) -> OrdinaryMultinomialRow:
        return om_row(N, self.s)

    def table(self, N_max: int) -> List[OrdinaryMultinomialRow]:
        """Строки N = 0..N_max."""
        if N_max < 0:
            raise ValueError(f"Нужно N_max >= 0, получено {N_max}")
        return [self.row(N) for N in range(N_max + 1)]

    def unimodality(self, N: int) -> UnimodalityReport:
        return check_strong_unimodality(self.row(N))

    def thresholds(self, N: int) -> List[ThresholdReport]:
        """Пороги c=1 (N >= 1) и c=2 (N >= 2) для строки N."""
        reports = []
        if N >= 1:
            reports.append(smallest_k_c1(N, self.s))
        if N >= 2:
            reports.append(smallest_k_c2(N, self.s))
        return reports
