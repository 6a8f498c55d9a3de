"""
Серия случайных испытаний: измеренное D* против предсказанного D_m.

Пример:
    uv run manage.py experiment --p 3109 --d 2-3 --n 2-4 --trials 10 --threads 4
"""

from apps.xl.management.base import XLCommand, parse_int_list
from apps.xl.services.experiment_service import ExperimentService, RunConfig
from config.runtime import settings


class Command(XLCommand):
    help = "Измеряет наименьшее завершающее D на случайных системах"

    def add_command_arguments(self, parser):
        parser.add_argument("--p", required=True, help="Простые модули через запятую")
        parser.add_argument("--d", required=True, help="Степень или диапазон a-b")
        parser.add_argument("--n", required=True, help="Число переменных или диапазон a-b")
        parser.add_argument("--c", type=int, default=1, help="Превышение числа уравнений")
        parser.add_argument("--trials", type=int, default=None, help="Испытаний на точку")
        parser.add_argument(
            "--d-cap", dest="d_cap", type=int, default=None, help="Верхняя граница D"
        )
        parser.add_argument(
            "--timings",
            action="store_true",
            help="Записывать elapsed_ms (вывод перестаёт быть побайтно воспроизводимым)",
        )

    def run(self, **options):
        config = RunConfig(
            primes=tuple(parse_int_list(options["p"])),
            degrees=tuple(parse_int_list(options["d"])),
            ns=tuple(parse_int_list(options["n"])),
            c=options["c"],
            trials=options["trials"] or settings.default_trials,
            seed=self.seed(options),
            D_cap=options["d_cap"] or settings.default_d_cap,
            budget=self.budget(options),
            threads=self.threads(options),
            timings=options["timings"],
            output_format=options["output_format"],
            out=options["out"],
        )

        service = ExperimentService(config)
        report = service.run()
        self.emit(service.render(report), config.out)
