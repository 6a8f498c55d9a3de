"""
Модуль verification - перекрёстные проверки основных реализаций по эталонам.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from apps.xl.exceptions import UnimodalityViolation
from apps.xl.services import multinomial_service
from apps.xl.services.field_service import make_field
from apps.xl.services.hilbert_service import HilbertService
from apps.xl.services.multinomial_service import (
    MultinomialService,
    OrdinaryMultinomialRow,
    check_strong_unimodality,
    om_alternating,
    om_convolution,
)
from apps.xl.services.oracle_service import (
    ExhaustiveSearchService,
    om_series_oracle,
    rank_reference,
)
from apps.xl.services.polynomial_service import SystemService
from apps.xl.services.xl_service import SolveStatus, XLService, echelon_rank
from config.runtime import settings
from logger.logger import setup_logger

logger = setup_logger(module_name=__name__)

SCOPES = ("rank", "multinomial", "unimodality", "thresholds", "solve")

RowProvider = Callable[[int, int], OrdinaryMultinomialRow]


@dataclass(frozen=True)
class CheckResult:
    """Строка таблицы проверок."""

    scope: str
    passed: bool
    checked: int
    detail: str = ""


class VerificationService:
    """
    Набор проверок для команды verify.

    row_provider подменяет источник строк ⟨N k⟩_s (по умолчанию om_row) -
    так проверяется, что испорченная строка действительно ловится.
    """

    def __init__(
        self,
        seed: Optional[int] = None,
        grid_N: int = 12,
        grid_s: int = 6,
        matrices: int = 100,
        planted_systems: int = 20,
        rank_modulus: int = 3109,
        row_provider: Optional[RowProvider] = None,
    ):
        self.seed = settings.default_seed if seed is None else seed
        self.grid_N = grid_N
        self.grid_s = grid_s
        self.matrices = matrices
        self.planted_systems = planted_systems
        self.rank_modulus = rank_modulus
        self.row_provider = row_provider or multinomial_service.om_row

    def check_rank(self) -> CheckResult:
        """Ранг исключения против ранга эталона на случайных матрицах до 200x300."""
        rng = np.random.default_rng(self.seed)
        field = make_field(self.rank_modulus)
        for index in range(self.matrices):
            height = int(rng.integers(1, 201))
            width = int(rng.integers(1, 301))
            entries = rng.integers(0, field.modulus, size=(height, width))
            # часть матриц делаем вырожденными повтором строк
            if height > 2 and index % 3 == 0:
                entries[height // 2 :] = entries[: height - height // 2]
            actual = echelon_rank(field(entries))
            expected = rank_reference(entries, field.modulus)
            if actual != expected:
                return CheckResult(
                    "rank", False, index + 1,
                    f"матрица {height}x{width}: {actual} != {expected}",
                )
        return CheckResult("rank", True, self.matrices)

    def check_multinomial(self) -> CheckResult:
        """om_row = знакопеременная формула = свёртка = прямое разложение ряда."""
        checked = 0
        for s in range(1, self.grid_s + 1):
            for N in range(self.grid_N + 1):
                row = self.row_provider(N, s)
                series = om_series_oracle(N, s)
                if list(row.values) != series:
                    return CheckResult(
                        "multinomial", False, checked, f"N={N}, s={s}: строка != ряду"
                    )
                for k in range(s * N + 1):
                    if not row[k] == om_alternating(N, k, s) == om_convolution(N, k, s):
                        return CheckResult(
                            "multinomial", False, checked,
                            f"N={N}, k={k}, s={s}: формулы расходятся",
                        )
                    checked += 1
        return CheckResult("multinomial", True, checked)

    def check_unimodality(self) -> CheckResult:
        checked = 0
        for s in range(1, self.grid_s + 1):
            for N in range(2, self.grid_N + 1):
                row = self.row_provider(N, s)
                try:
                    report = check_strong_unimodality(row)
                except UnimodalityViolation as e:
                    return CheckResult("unimodality", False, checked, str(e))
                if report.plateau != (s * N % 2 == 1):
                    return CheckResult(
                        "unimodality", False, checked, f"N={N}, s={s}: неверное плато"
                    )
                checked += 1
        return CheckResult("unimodality", True, checked)

    def check_thresholds(self) -> CheckResult:
        """Пороги c=1, c=2 и D_m против замкнутых формул."""
        checked = 0
        for s in range(1, self.grid_s + 1):
            triangle = MultinomialService(s)
            for N in range(1, self.grid_N + 1):
                for report in triangle.thresholds(N):
                    if not report.agrees:
                        return CheckResult(
                            "thresholds", False, checked,
                            f"c={report.c}, N={N}, s={s}: перебор {report.k_scanned}, "
                            f"формула {report.k_closed_form}",
                        )
                    checked += 1

        for n in range(2, self.grid_N):
            for d in range(2, self.grid_s + 2):
                for c in (1, 2):
                    predictor = HilbertService(n, c, d)
                    closed = predictor.closed_form()
                    if closed is not None and closed != predictor.d_min().D_m:
                        return CheckResult(
                            "thresholds", False, checked, f"D_m(n={n}, c={c}, d={d}) != {closed}"
                        )
                    checked += 1
        return CheckResult("thresholds", True, checked)

    def check_solve(self) -> CheckResult:
        """XLService против полного перебора на засеянных системах над малыми полями."""
        rng = np.random.default_rng(self.seed)
        oracle = ExhaustiveSearchService()
        compared = 0
        for index in range(self.planted_systems):
            p = int(rng.choice([7, 11, 13]))
            n = int(rng.integers(1, 4))
            c = int(rng.integers(1, 3))
            d = int(rng.integers(2, 4))
            field = make_field(p)
            point = tuple(int(x) for x in rng.integers(0, p, size=n))
            system = SystemService(field, seed=int(rng.integers(0, 2**32))).planted(
                n, c, d, point
            )
            service = XLService(system, budget=settings.budget_cells)

            # запас в три степени над ожидаемым D* для систем не общего положения
            D = service.find_min_d((d - 1) * (n + 1) + 3)
            if D is None:
                continue
            outcome = service.solve(D)
            expected = oracle.solve(system).solutions
            if point not in expected or not outcome.solutions <= expected:
                return CheckResult(
                    "solve", False, compared, f"система {index}: решение не проходит проверку"
                )
            if outcome.status == SolveStatus.SOLVED:
                if outcome.solutions != expected:
                    return CheckResult(
                        "solve", False, compared,
                        f"система {index} (p={p}, n={n}): {sorted(outcome.solutions)} "
                        f"!= {sorted(expected)}",
                    )
                compared += 1
        return CheckResult("solve", True, compared)

    def run(self, scopes: Sequence[str] = SCOPES) -> List[CheckResult]:
        """
        Выполняет выбранные проверки.

        Args:
            scopes: Подмножество SCOPES

        Returns:
            List[CheckResult]: По строке на проверку
        """
        checks: Dict[str, Callable[[], CheckResult]] = {
            "rank": self.check_rank,
            "multinomial": self.check_multinomial,
            "unimodality": self.check_unimodality,
            "thresholds": self.check_thresholds,
            "solve": self.check_solve,
        }
        unknown = [scope for scope in scopes if scope not in checks]
        if unknown:
            raise ValueError(f"Неизвестные проверки: {', '.join(unknown)}")

        results = []
        for scope in scopes:
            logger.info(f"🔍 Проверка {scope}...")
            result = checks[scope]()
            if result.passed:
                logger.info(f"✅ {scope}: {result.checked} случаев")
            else:
                logger.error(f"❌ {scope}: {result.detail}")
            results.append(result)
        return results
