"""
Общая основа команд управления xl: глобальные флаги, вывод и коды выхода.
"""

import re
from pathlib import Path
from typing import List, Optional

from django.core.management.base import BaseCommand, CommandError

from apps.xl.exceptions import XLError
from config.runtime import settings
from logger.logger import setup_logger

logger = setup_logger(module_name=__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2

_RANGE_RE = re.compile(r"^(\d+)(?:-(\d+))?$")


def parse_int_list(text: str) -> List[int]:
    """
    Разбирает `5`, `2-10` или `3109,5011,2-4` в список целых без повторов.

    Raises:
        CommandError: при неверной записи (код 2)
    """
    values: List[int] = []
    for part in text.split(","):
        match = _RANGE_RE.match(part.strip())
        if not match:
            raise CommandError(f"Неверный диапазон {text!r}", returncode=EXIT_USAGE)
        low = int(match.group(1))
        high = int(match.group(2) or low)
        if high < low:
            raise CommandError(f"Пустой диапазон {part!r}", returncode=EXIT_USAGE)
        for value in range(low, high + 1):
            if value not in values:
                values.append(value)
    return values


class XLCommand(BaseCommand):
    """
    Базовая команда: флаги --seed, --format, --out, --threads, --budget.

    Наследники реализуют add_command_arguments() и run(). Ошибки значений и
    разбора завершают команду с кодом 2, остальные ошибки xl - с кодом 1.
    """

    requires_system_checks = []
    requires_migrations_checks = False
    default_format = "csv"

    def add_arguments(self, parser):
        parser.add_argument("--seed", type=int, default=None, help="Зерно генератора")
        parser.add_argument(
            "--format",
            dest="output_format",
            choices=["csv", "json"],
            default=self.default_format,
            help="Формат вывода",
        )
        parser.add_argument("--out", default=None, help="Файл для результата вместо stdout")
        parser.add_argument("--threads", type=int, default=None, help="Число процессов")
        parser.add_argument(
            "--budget", type=int, default=None, help="Предел ячеек матрицы Маколея"
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except CommandError:
            raise
        except (XLError, ValueError) as e:
            code = EXIT_USAGE if isinstance(e, ValueError) else EXIT_FAILURE
            logger.error(f"❌ {e}")
            raise CommandError(str(e), returncode=code) from e

    def run(self, **options):
        raise NotImplementedError

    def fail(self, message: str, returncode: int = EXIT_FAILURE):
        logger.error(f"❌ {message}")
        raise CommandError(message, returncode=returncode)

    def usage_error(self, message: str):
        raise CommandError(message, returncode=EXIT_USAGE)

    def emit(self, text: str, out: Optional[str] = None):
        """Пишет результат в stdout или в файл --out."""
        if out:
            path = Path(out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            logger.info(f"📄 Результат сохранён: {path}")
        else:
            self.stdout.write(text, ending="")

    @staticmethod
    def seed(options) -> int:
        return settings.default_seed if options.get("seed") is None else options["seed"]

    @staticmethod
    def threads(options) -> int:
        threads = options.get("threads")
        return settings.threads if threads is None else threads

    @staticmethod
    def budget(options) -> int:
        budget = options.get("budget")
        return settings.budget_cells if budget is None else budget
