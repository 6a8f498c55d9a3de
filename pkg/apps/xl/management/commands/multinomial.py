"""
Строки треугольника обыкновенных мультиномиальных коэффициентов.

Примеры:
    uv run manage.py multinomial 2 3
    uv run manage.py multinomial --table 3 4 --check-unimodal
"""

import json

from apps.xl.exceptions import UnimodalityViolation
from apps.xl.management.base import XLCommand
from apps.xl.services.multinomial_service import MultinomialService


class Command(XLCommand):
    help = "Печатает строки ⟨N k⟩_s, k = 0..sN"

    def add_command_arguments(self, parser):
        parser.add_argument("N", type=int, nargs="?", help="Показатель N")
        parser.add_argument("s", type=int, nargs="?", help="Старшая степень s")
        parser.add_argument(
            "--table",
            type=int,
            nargs=2,
            metavar=("S", "N_MAX"),
            help="Строки N = 0..N_MAX для заданного s",
        )
        parser.add_argument(
            "--check-unimodal",
            action="store_true",
            help="Проверить строгую унимодальность строк с N >= 2",
        )

    def run(self, **options):
        if options["table"]:
            s, n_max = options["table"]
        elif options["N"] is not None and options["s"] is not None:
            s, n_max = options["s"], options["N"]
        else:
            self.usage_error("Укажите N и s или --table s N_max")

        if s < 1 or n_max < 0:
            self.usage_error("Нужно s >= 1 и N >= 0")

        service = MultinomialService(s)
        rows = service.table(n_max) if options["table"] else [service.row(n_max)]

        unimodal = []
        if options["check_unimodal"]:
            for row in rows:
                if row.N < 2:
                    continue
                try:
                    unimodal.append(service.unimodality(row.N))
                except UnimodalityViolation as e:
                    self.fail(str(e))

        if options["output_format"] == "json":
            payload = {
                "s": s,
                "rows": [{"N": row.N, "values": list(row.values)} for row in rows],
            }
            if options["check_unimodal"]:
                payload["unimodality"] = [
                    {
                        "N": report.N,
                        "mode": report.strictly_rising_until,
                        "plateau": report.plateau,
                        "peak": report.peak,
                    }
                    for report in unimodal
                ]
            text = json.dumps(payload, indent=2) + "\n"
        else:
            lines = [",".join(str(value) for value in row.values) for row in rows]
            lines.extend(
                f"#UNIMODAL,{report.N},{report.s},{report.strictly_rising_until},"
                f"{str(report.plateau).lower()},{report.peak}"
                for report in unimodal
            )
            text = "\n".join(lines) + "\n"

        self.emit(text, options["out"])
