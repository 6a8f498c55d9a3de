"""
Модуль hilbert - усечённые степенные ряды и предсказание минимальной степени D_m.

Ряды хранятся как кортежи целых Python (коэффициент при T^k по индексу k).
Деление на (1-T) выполняется префиксными суммами, без рациональных функций.
"""

from dataclasses import dataclass
from itertools import accumulate
from typing import Optional, Sequence, Tuple

from apps.xl.exceptions import UnsupportedC
from apps.xl.services.multinomial_service import closed_form_c1, closed_form_c2, om
from logger.logger import setup_logger

logger = setup_logger(module_name=__name__)

SUPPORTED_C = (1, 2)


@dataclass(frozen=True)
class PowerSeries:
    """Степенной ряд, усечённый на степени D_max."""

    coeffs: Tuple[int, ...]

    @property
    def D_max(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    @classmethod
    def from_polynomial(cls, coeffs: Sequence[int], D_max: int) -> "PowerSeries":
        values = list(coeffs[: D_max + 1])
        values.extend([0] * (D_max + 1 - len(values)))
        return cls(tuple(values))


@dataclass(frozen=True)
class DminResult:
    """
    Наименьшее D, при котором нижняя оценка χ(D) не превышает D.

    bound_values[D] - значение оценки для D = 0..D_m.
    """

    n: int
    c: int
    d: int
    D_m: int
    bound_values: Tuple[int, ...]


def series_mul(left: PowerSeries, right: PowerSeries, D_max: Optional[int] = None) -> PowerSeries:
    """
    Произведение рядов, усечённое на D_max (по умолчанию - меньшая из длин).
    """
    if D_max is None:
        D_max = min(left.D_max, right.D_max)
    out = [0] * (D_max + 1)
    for i, a in enumerate(left.coeffs[: D_max + 1]):
        if not a:
            continue
        for j, b in enumerate(right.coeffs[: D_max + 1 - i]):
            out[i + j] += a * b
    return PowerSeries(tuple(out))


def _divide_by_one_minus_t(coeffs: Sequence[int], times: int) -> Tuple[int, ...]:
    # 1/(1-T) = 1 + T + T^2 + ..., умножение на него - префиксная сумма
    values = tuple(coeffs)
    for _ in range(times):
        values = tuple(accumulate(values))
    return values


def generic_hilbert_series(
    degrees: Sequence[int], n_plus_1: int, D_max: int
) -> PowerSeries:
    """
    Ряд Гильберта ∏(1-T^{d_j}) / (1-T)^{n+1} для m <= n+1 общих форм.

    Args:
        degrees: Степени форм d_1..d_m, m <= n+1
        n_plus_1: Число однородных переменных n+1
        D_max: Степень усечения

    Returns:
        PowerSeries: Коэффициенты T^0..T^{D_max}
    """
    if D_max < 0:
        raise ValueError(f"D_max должно быть неотрицательным, получено {D_max}")
    if len(degrees) > n_plus_1:
        raise ValueError(
            f"Формула верна только для m <= n+1 форм: m={len(degrees)}, n+1={n_plus_1}"
        )

    numerator = [0] * (D_max + 1)
    numerator[0] = 1
    for degree in degrees:
        if degree < 1:
            raise ValueError(f"Степень формы должна быть положительной: {degree}")
        # умножение на (1 - T^degree) сверху вниз, чтобы не затереть нужные коэффициенты
        for k in range(D_max, degree - 1, -1):
            numerator[k] -= numerator[k - degree]

    return PowerSeries(_divide_by_one_minus_t(numerator, n_plus_1))


def series_geom(d: int, n_plus_1: int, D_max: int) -> PowerSeries:
    """
    (1 + T + ... + T^{d-1})^{n+1}, усечённый на D_max.

    Коэффициент при T^D равен ⟨n+1, D⟩_{d-1}.
    """
    return generic_hilbert_series([d] * n_plus_1, n_plus_1, D_max)


def lower_bound_series(degrees: Sequence[int], n: int, D_max: int) -> PowerSeries:
    """
    Нижняя оценка ряда Гильберта для n+c уравнений:
    (1 - Σ_{j>n+1} T^{d_j}) · ∏_{j<=n+1}(1-T^{d_j}) / (1-T)^{n+1}.

    Args:
        degrees: Степени всех n+c уравнений, c >= 1
        n: Число переменных
        D_max: Степень усечения

    Returns:
        PowerSeries: Коэффициенты оценки; могут быть отрицательными
    """
    if len(degrees) < n + 1:
        raise ValueError(f"Нужно хотя бы n+1={n + 1} степеней, получено {len(degrees)}")

    head = generic_hilbert_series(degrees[: n + 1], n + 1, D_max)
    correction = [0] * (D_max + 1)
    correction[0] = 1
    for degree in degrees[n + 1 :]:
        if degree <= D_max:
            correction[degree] -= 1
    return series_mul(PowerSeries(tuple(correction)), head, D_max)


class HilbertService:
    """
    Нижняя оценка χ(D) и предсказание D_m для n+c уравнений степени d.

    Параметры проверяются в методах: оценка определена при n >= 1, c >= 1,
    а D_m - только при n >= 2 и c ∈ {1, 2}.
    """

    def __init__(self, n: int, c: int, d: int):
        self.n = n
        self.c = c
        self.d = d

    def chi_lower_bound(self, D: int) -> int:
        """
        ⟨n+1, D⟩_{d-1} - (c-1)·⟨n+1, D-d⟩_{d-1}.

        Returns:
            int: Коэффициент ряда со знаком (может быть отрицательным)
        """
        n, c, d = self.n, self.c, self.d
        if n < 1 or c < 1 or d < 2 or D < 0:
            raise ValueError(
                f"Нужно n >= 1, c >= 1, d >= 2, D >= 0; получено n={n}, c={c}, d={d}, D={D}"
            )
        return om(n + 1, D, d - 1) - (c - 1) * om(n + 1, D - d, d - 1)

    def _check_supported(self) -> None:
        if self.c not in SUPPORTED_C:
            raise UnsupportedC(self.c)

    def d_min(self) -> DminResult:
        """
        Наименьшее D с chi_lower_bound(D) <= D (возрастающий перебор с D=0).

        Raises:
            UnsupportedC: если c не равно 1 или 2
        """
        self._check_supported()
        n, c, d = self.n, self.c, self.d
        if n < 2 or d < 2:
            raise ValueError(f"Нужно n >= 2 и d >= 2, получено n={n}, d={d}")

        values = []
        D = 0
        while True:
            bound = self.chi_lower_bound(D)
            values.append(bound)
            if bound <= D:
                break
            D += 1

        logger.debug(f"D_m(n={n}, c={c}, d={d}) = {D}")
        return DminResult(n=n, c=c, d=d, D_m=D, bound_values=tuple(values))

    def closed_form(self) -> Optional[int]:
        """
        Замкнутая формула D_m через пороговые функции с N = n+1, s = d-1.

        Для c=1 формула существует не при всех (n, d) - тогда None.
        Для c=2: 2(d-1) при n=2 и ⌊(d-1)(n+2)/2⌋+1 при n >= 3.
        """
        self._check_supported()
        if self.c == 1:
            return closed_form_c1(self.n + 1, self.d - 1)
        return closed_form_c2(self.n + 1, self.d - 1)

    def conjectured_d_star(self) -> int:
        """Ожидаемое D* для c=1: (d-1)(n+1)-1. Только для отчётов."""
        return (self.d - 1) * (self.n + 1) - 1

    def heuristic_start_degree(self) -> int:
        """Оценка стартового D для произвольного c: ⌈(d-1)(n+c)/c⌉."""
        if self.c < 1:
            raise ValueError(f"c должно быть положительным, получено {self.c}")
        return -(-(self.d - 1) * (self.n + self.c) // self.c)

    def start_degree(self) -> int:
        """
        Стартовое D поиска: D_m при c ∈ {1, 2} и n >= 2, иначе эвристика;
        не меньше 1 + d.
        """
        minimum = 1 + self.d
        if self.n >= 2 and self.c in SUPPORTED_C:
            return max(minimum, self.d_min().D_m)
        if self.c >= 1:
            return max(minimum, self.heuristic_start_degree())
        return minimum


def chi_lower_bound(n: int, c: int, d: int, D: int) -> int:
    """Удобная функция: нижняя оценка χ(D) для n+c уравнений степени d."""
    return HilbertService(n, c, d).chi_lower_bound(D)


def d_min(n: int, c: int, d: int) -> DminResult:
    """
    Удобная функция: наименьшее D, при котором оценка χ(D) не превышает D.

    Args:
        n: Число переменных, n >= 2
        c: 1 или 2
        d: Степень уравнений, d >= 2

    Returns:
        DminResult: D_m и значения оценки на пройденном отрезке

    Raises:
        UnsupportedC: если c не равно 1 или 2
    """
    return HilbertService(n, c, d).d_min()


def closed_form_d_min(n: int, c: int, d: int) -> Optional[int]:
    return HilbertService(n, c, d).closed_form()


def conjectured_d_star(n: int, d: int) -> int:
    return HilbertService(n, 1, d).conjectured_d_star()


def heuristic_start_degree(n: int, c: int, d: int) -> int:
    return HilbertService(n, c, d).heuristic_start_degree()
