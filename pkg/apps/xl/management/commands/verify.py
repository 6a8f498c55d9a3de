"""
Перекрёстные проверки по эталонам; код выхода 0, только если прошли все.

Пример:
    uv run manage.py verify --scope rank,multinomial --grid N=12,s=6
"""

import csv
import io
import json
import re
from dataclasses import asdict

from apps.xl.management.base import XLCommand
from apps.xl.services.verification_service import SCOPES, VerificationService

_GRID_RE = re.compile(r"^N=(\d+),s=(\d+)$")


class Command(XLCommand):
    help = "Сверяет исключение, мультиномиальные коэффициенты и решатель с эталонами"

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--scope",
            default=",".join(SCOPES),
            help=f"Проверки через запятую: {', '.join(SCOPES)}",
        )
        parser.add_argument("--grid", default="N=12,s=6", help="Сетка N=<max>,s=<max>")
        parser.add_argument("--matrices", type=int, default=100, help="Случайных матриц")
        parser.add_argument(
            "--systems", type=int, default=20, help="Засеянных систем для проверки solve"
        )

    def run(self, **options):
        grid = _GRID_RE.match(options["grid"].replace(" ", ""))
        if not grid:
            self.usage_error(f"Неверная сетка {options['grid']!r}, ожидается N=12,s=6")
        scopes = [scope.strip() for scope in options["scope"].split(",") if scope.strip()]

        service = VerificationService(
            seed=self.seed(options),
            grid_N=int(grid.group(1)),
            grid_s=int(grid.group(2)),
            matrices=options["matrices"],
            planted_systems=options["systems"],
        )
        results = service.run(scopes)

        if options["output_format"] == "json":
            text = json.dumps([asdict(result) for result in results], ensure_ascii=False, indent=2) + "\n"
        else:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(["scope", "status", "checked", "detail"])
            for result in results:
                writer.writerow(
                    [result.scope, "pass" if result.passed else "fail", result.checked, result.detail]
                )
            text = buffer.getvalue()
        self.emit(text, options["out"])

        failed = [result.scope for result in results if not result.passed]
        if failed:
            self.fail(f"Проверки не пройдены: {', '.join(failed)}")
