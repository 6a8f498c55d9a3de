"""
Решение системы из файла алгоритмом XL.

Формат файла: заголовок `p=<простое> n=<переменные>`, затем по многочлену на
строку (`3*x1^2*x2 + x2 - 5`), `#` - комментарий.

Примеры:
    uv run manage.py solve system.txt --D 5
    uv run manage.py solve system.txt --auto --planted 3,7
"""

import csv
import io
import json
from pathlib import Path

from apps.xl.exceptions import DegreeSearchExhausted, ParseError
from apps.xl.management.base import EXIT_FAILURE, XLCommand
from apps.xl.services.hilbert_service import HilbertService
from apps.xl.services.polynomial_service import (
    PolySystem,
    evaluate,
    parse_system,
    plant_solution,
)
from apps.xl.services.xl_service import SolveStatus, XLService
from config.runtime import settings
from logger.logger import setup_logger

logger = setup_logger(module_name=__name__)


def start_degree(system: PolySystem) -> int:
    """
    Стартовое D для --auto: D_m при c ∈ {1, 2} и равных степенях, иначе
    оценка ⌈(d-1)(n+c)/c⌉; не меньше 1 + max deg.
    """
    predictor = HilbertService(system.n, system.c, system.d)
    if system.is_equal_degree():
        return predictor.start_degree()
    minimum = 1 + system.d
    if system.c >= 1:
        return max(minimum, predictor.heuristic_start_degree())
    return minimum


class Command(XLCommand):
    help = "Решает систему многочленов над GF(p) алгоритмом XL"
    default_format = "json"

    def add_command_arguments(self, parser):
        parser.add_argument("system_file", help="Файл системы")
        parser.add_argument("--D", dest="D", type=int, default=None, help="Максимальная степень")
        parser.add_argument(
            "--auto",
            action="store_true",
            help="Искать D, начиная с предсказанного значения",
        )
        parser.add_argument(
            "--planted",
            default=None,
            help="Засеять решение x1,..,xn перед решением",
        )
        parser.add_argument(
            "--d-cap",
            dest="d_cap",
            type=int,
            default=None,
            help="Верхняя граница D для --auto",
        )
        parser.add_argument(
            "--reminimize",
            action="store_true",
            help="Искать наименьшее D заново на каждом уровне рекурсии",
        )

    def run(self, **options):
        if options["D"] is None and not options["auto"]:
            self.usage_error("Укажите --D или --auto")

        path = Path(options["system_file"])
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"Не удалось прочитать {path}: {e}") from e
        system = parse_system(text)

        planted = None
        if options["planted"]:
            try:
                planted = tuple(
                    system.field.residue(int(x)) for x in options["planted"].split(",")
                )
            except ValueError as e:
                raise ParseError(f"Неверная точка --planted: {options['planted']!r}") from e
            system = plant_solution(system, planted)

        service = XLService(
            system, budget=self.budget(options), reminimize=options["reminimize"]
        )

        if options["auto"]:
            d_cap = options["d_cap"] or settings.default_d_cap
            start = start_degree(system)
            logger.info(f"🔍 Поиск D от {start} до {d_cap}")
            D = service.find_min_d(d_cap, start=start)
            if D is None:
                raise DegreeSearchExhausted(d_cap)
        else:
            D = options["D"]

        outcome = service.solve(D)
        solutions = sorted(outcome.solutions)
        verified = [
            all(evaluate(poly, point) == 0 for poly in system.polys) for point in solutions
        ]

        report = {
            "p": system.field.modulus,
            "n": system.n,
            "c": system.c,
            "D": D,
            "status": outcome.status.value,
            "solutions": [list(point) for point in solutions],
            "verified": verified,
            "witness_degrees": {
                str(level): list(values) for level, values in outcome.witness_degrees.items()
            },
        }
        if planted is not None:
            report["planted"] = list(planted)
            report["planted_found"] = planted in outcome.solutions

        if options["output_format"] == "csv":
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow([f"x{i + 1}" for i in range(system.n)] + ["verified"])
            for point, ok in zip(solutions, verified):
                writer.writerow([*point, str(ok).lower()])
            text = buffer.getvalue()
        else:
            text = json.dumps(report, indent=2) + "\n"
        self.emit(text, options["out"])

        if outcome.status == SolveStatus.NO_UNIVARIATE:
            self.fail(f"Одномерное уравнение не получено при D={D}", EXIT_FAILURE)
        if planted is not None and outcome.status == SolveStatus.SOLVED and not report["planted_found"]:
            self.fail("Засеянное решение не найдено", EXIT_FAILURE)
