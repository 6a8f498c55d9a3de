"""
Предсказанная минимальная степень D_m для c = 1, 2.

Пример:
    uv run manage.py dmin --n 2-10 --c 1 --d 2-10
"""

import csv
import io
import json

from apps.xl.management.base import XLCommand, parse_int_list
from apps.xl.services.hilbert_service import HilbertService


class Command(XLCommand):
    help = "Наименьшее D, при котором нижняя оценка χ(D) не превышает D"

    def add_command_arguments(self, parser):
        parser.add_argument("--n", required=True, help="n или диапазон a-b")
        parser.add_argument("--d", required=True, help="d или диапазон a-b")
        parser.add_argument("--c", type=int, default=1, help="c ∈ {1, 2}")

    def run(self, **options):
        c = options["c"]
        rows = []
        for d in parse_int_list(options["d"]):
            for n in parse_int_list(options["n"]):
                predictor = HilbertService(n, c, d)
                result = predictor.d_min()
                closed = predictor.closed_form()
                rows.append(
                    {
                        "n": n,
                        "c": c,
                        "d": d,
                        "D_m": result.D_m,
                        "closed_form": closed,
                        "agrees": None if closed is None else closed == result.D_m,
                    }
                )

        if options["output_format"] == "json":
            text = json.dumps(rows, indent=2) + "\n"
        else:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(["n", "c", "d", "D_m", "closed_form", "agrees"])
            for row in rows:
                writer.writerow(
                    [
                        row["n"],
                        row["c"],
                        row["d"],
                        row["D_m"],
                        "" if row["closed_form"] is None else row["closed_form"],
                        "" if row["agrees"] is None else str(row["agrees"]).lower(),
                    ]
                )
            text = buffer.getvalue()

        self.emit(text, options["out"])
