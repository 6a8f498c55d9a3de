"""
Модуль experiment - серии случайных испытаний: измеренное D* против D_m.

Каждое испытание получает своё зерно из (master seed, p, d, n, номер), поэтому
добавление испытаний не меняет уже посчитанные. Испытания выполняются в пуле
процессов, результаты выводятся в порядке конфигурации.
"""

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from apps.xl.exceptions import BudgetExceeded
from apps.xl.services.field_service import make_field
from apps.xl.services.hilbert_service import SUPPORTED_C, HilbertService
from apps.xl.services.multinomial_service import om
from apps.xl.services.polynomial_service import SystemService
from apps.xl.services.xl_service import XLService, estimate_cells
from config.runtime import settings
from logger.logger import setup_logger

logger = setup_logger(module_name=__name__)

CSV_COLUMNS = ["p", "d", "n", "c", "trial", "seed", "D_star", "D_m", "match", "elapsed_ms"]
SUMMARY_PREFIX = "#SUMMARY"


@dataclass(frozen=True)
class RunConfig:
    """
    Параметры серии испытаний.

    Точки (p, d, n) перебираются в порядке primes × degrees × ns.
    """

    primes: Tuple[int, ...]
    degrees: Tuple[int, ...]
    ns: Tuple[int, ...]
    c: int = 1
    trials: int = dc_field(default_factory=lambda: settings.default_trials)
    seed: int = dc_field(default_factory=lambda: settings.default_seed)
    D_cap: int = dc_field(default_factory=lambda: settings.default_d_cap)
    budget: int = dc_field(default_factory=lambda: settings.budget_cells)
    threads: int = dc_field(default_factory=lambda: settings.threads)
    timings: bool = False
    output_format: str = "csv"
    out: Optional[str] = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"Число испытаний должно быть >= 1, получено {self.trials}")
        if self.c < 1:
            raise ValueError(f"c должно быть >= 1, получено {self.c}")
        if not (self.primes and self.degrees and self.ns):
            raise ValueError("Пустой список p, d или n")
        if self.D_cap < max(self.degrees) + 1:
            raise ValueError(
                f"D_cap={self.D_cap} меньше d+1 для d={max(self.degrees)}"
            )
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"Неизвестный формат {self.output_format!r}")

    def points(self) -> List[Tuple[int, int, int]]:
        return [(p, d, n) for p in self.primes for d in self.degrees for n in self.ns]


@dataclass(frozen=True)
class ExperimentRecord:
    """
    Одно испытание.

    D_star - наименьшее D с одномерным уравнением (None, если D_cap исчерпан),
    D_m - предсказание (None для c > 2 и n < 2).
    """

    p: int
    d: int
    n: int
    c: int
    trial: int
    seed: int
    D_star: Optional[int]
    D_m: Optional[int]
    match: bool
    elapsed_ms: float
    notes: Tuple[str, ...] = ()
    chi_violations: int = 0


@dataclass(frozen=True)
class SummaryRow:
    """Сводка по точке (p, d, n) в форме таблицы: среднее и минимальное D*."""

    p: int
    d: int
    n: int
    c: int
    trials: int
    D_average: Optional[float]
    D_min: Optional[int]
    D_m: Optional[int]
    conjectured: Optional[int]
    matches: int


@dataclass(frozen=True)
class ExperimentReport:
    config: RunConfig
    records: Tuple[ExperimentRecord, ...]
    summaries: Tuple[SummaryRow, ...]


def trial_seed(master_seed: int, p: int, d: int, n: int, trial: int) -> int:
    """Зерно испытания, зависящее только от (master seed, p, d, n, номер)."""
    sequence = np.random.SeedSequence(master_seed, spawn_key=(p, d, n, trial))
    return int(sequence.generate_state(1)[0])


def predicted_d_min(n: int, c: int, d: int) -> Optional[int]:
    if c not in SUPPORTED_C or n < 2:
        return None
    return HilbertService(n, c, d).d_min().D_m


def run_trial(
    p: int, d: int, n: int, c: int, trial: int, master_seed: int, D_cap: int, budget: int
) -> ExperimentRecord:
    """
    Одно испытание: случайная система, поиск D* с проверкой достаточного
    условия на каждом D.

    Аргументы - только целые числа, чтобы задача дёшево передавалась в процесс.

    Raises:
        BudgetExceeded: если матрица при каком-либо D больше бюджета
        SufficiencyViolation: если χ(D) <= D без одномерного уравнения
    """
    seed = trial_seed(master_seed, p, d, n, trial)
    started = time.perf_counter()

    system = SystemService(make_field(p), seed=seed).random(n, c, d)
    D_m = predicted_d_min(n, c, d)

    if D_m is not None:
        D_check = max(D_m, d + 1)
        cells = estimate_cells(system, D_check)
        if cells > budget:
            raise BudgetExceeded(p, d, n, D_check, cells, budget)

    D_star = None
    chi_violations = 0
    notes: List[str] = []
    for probe in XLService(system, budget=budget).probes(D_cap):
        probe.check_sufficiency()
        if c == 1:
            expected = om(n + 1, probe.D, d - 1)
            if probe.chi != expected:
                chi_violations += 1
                notes.append(f"χ({probe.D})={probe.chi}, ожидалось {expected}")
            if probe.chi < expected:
                logger.warning(
                    f"⚠️ Нарушена нижняя оценка: χ({probe.D})={probe.chi} < {expected} "
                    f"(p={p}, d={d}, n={n}, trial={trial})"
                )
        if probe.univariate_count:
            D_star = probe.D
            break

    elapsed_ms = (time.perf_counter() - started) * 1000

    if D_star is None:
        notes.append(f"D_cap={D_cap} исчерпан")
        logger.warning(f"⚠️ Испытание (p={p}, d={d}, n={n}, trial={trial}): D_cap исчерпан")
    elif D_m is not None and D_star != D_m:
        direction = "ниже" if D_star < D_m else "выше"
        notes.append(f"D*={D_star} {direction} D_m={D_m}: система не общего положения")
        logger.warning(
            f"⚠️ Испытание (p={p}, d={d}, n={n}, trial={trial}, seed={seed}): "
            f"D*={D_star} {direction} D_m={D_m}"
        )

    return ExperimentRecord(
        p=p,
        d=d,
        n=n,
        c=c,
        trial=trial,
        seed=seed,
        D_star=D_star,
        D_m=D_m,
        match=D_m is not None and D_star == D_m,
        elapsed_ms=elapsed_ms,
        notes=tuple(notes),
        chi_violations=chi_violations,
    )


def _run_trial_task(task: Tuple[int, ...]) -> ExperimentRecord:
    return run_trial(*task)


class ExperimentService:
    """
    Серия испытаний по RunConfig: записи, сводки и их вывод в CSV или JSON.
    """

    def __init__(self, config: RunConfig):
        self.config = config

    def tasks(self) -> List[Tuple[int, ...]]:
        config = self.config
        return [
            (p, d, n, config.c, trial, config.seed, config.D_cap, config.budget)
            for p, d, n in config.points()
            for trial in range(config.trials)
        ]

    def run(self) -> ExperimentReport:
        """
        Выполняет все испытания.

        Returns:
            ExperimentReport: Записи в порядке конфигурации и сводки по точкам
        """
        tasks = self.tasks()
        logger.info(
            f"🚀 Эксперимент: {len(self.config.points())} точек, "
            f"{len(tasks)} испытаний, потоков {self.config.threads}"
        )

        if self.config.threads == 1:
            records = [_run_trial_task(task) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=self.config.threads) as executor:
                records = list(executor.map(_run_trial_task, tasks))

        summaries = self.summarize(records)
        deviations = sum(1 for record in records if not record.match)
        logger.info(
            f"✅ Эксперимент завершён: {len(records)} испытаний, отклонений от D_m: {deviations}"
        )
        return ExperimentReport(
            config=self.config, records=tuple(records), summaries=tuple(summaries)
        )

    def summarize(self, records: Sequence[ExperimentRecord]) -> List[SummaryRow]:
        grouped: Dict[Tuple[int, int, int], List[ExperimentRecord]] = {}
        for record in records:
            grouped.setdefault((record.p, record.d, record.n), []).append(record)

        summaries = []
        for p, d, n in self.config.points():
            group = grouped.get((p, d, n), [])
            measured = [record.D_star for record in group if record.D_star is not None]
            summaries.append(
                SummaryRow(
                    p=p,
                    d=d,
                    n=n,
                    c=self.config.c,
                    trials=len(group),
                    D_average=round(sum(measured) / len(measured), 2) if measured else None,
                    D_min=min(measured) if measured else None,
                    D_m=group[0].D_m if group else None,
                    conjectured=(
                        HilbertService(n, 1, d).conjectured_d_star()
                        if self.config.c == 1
                        else None
                    ),
                    matches=sum(1 for record in group if record.match),
                )
            )
        return summaries

    def to_csv(self, report: ExperimentReport) -> str:
        """CSV с фиксированными столбцами и строками #SUMMARY,p,d,n,D_average,D_min."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for record in report.records:
            writer.writerow(
                [
                    record.p,
                    record.d,
                    record.n,
                    record.c,
                    record.trial,
                    record.seed,
                    _blank(record.D_star),
                    _blank(record.D_m),
                    str(record.match).lower(),
                    f"{record.elapsed_ms:.1f}" if self.config.timings else "",
                ]
            )
        for summary in report.summaries:
            writer.writerow(
                [
                    SUMMARY_PREFIX,
                    summary.p,
                    summary.d,
                    summary.n,
                    "" if summary.D_average is None else f"{summary.D_average:.2f}",
                    _blank(summary.D_min),
                ]
            )
        return buffer.getvalue()

    def to_json(self, report: ExperimentReport) -> str:
        records = []
        for record in report.records:
            item = asdict(record)
            item["notes"] = list(record.notes)
            if not self.config.timings:
                item["elapsed_ms"] = None
            records.append(item)

        payload = {
            "records": records,
            "summaries": [asdict(summary) for summary in report.summaries],
        }
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"

    def render(self, report: ExperimentReport) -> str:
        if self.config.output_format == "json":
            return self.to_json(report)
        return self.to_csv(report)


def _blank(value: Optional[int]) -> str:
    return "" if value is None else str(value)


def run_experiment(config: RunConfig) -> ExperimentReport:
    """Удобная функция: выполнить серию испытаний по конфигурации."""
    return ExperimentService(config).run()
