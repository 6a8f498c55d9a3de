"""
Рабочие настройки XL: значения по умолчанию для экспериментов и команд.
"""

import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

# Загружаем переменные окружения из .env файла
env_path = Path(__file__).resolve().parent.parent / ".env"
load_dotenv(env_path)


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


@dataclass
class Settings:
    """Настройки приложения."""

    # Воспроизводимость экспериментов
    default_seed: int = int(os.getenv("XL_SEED", "20240601"))
    default_trials: int = int(os.getenv("XL_TRIALS", "10"))

    # Поиск D и ограничения на размер матриц Маколея
    default_d_cap: int = int(os.getenv("XL_D_CAP", "40"))
    budget_cells: int = int(os.getenv("XL_BUDGET_CELLS", "50000000"))
    threads: int = int(os.getenv("XL_THREADS", "1"))

    # Переборные оракулы и свободные переменные в xl_solve
    exhaustive_limit: int = int(os.getenv("XL_EXHAUSTIVE_LIMIT", "10000000"))
    unconstrained_limit: int = int(os.getenv("XL_UNCONSTRAINED_LIMIT", "10000"))

    # Логирование
    log_level: str = os.getenv("XL_LOG_LEVEL", "INFO")
    log_to_file: bool = _env_bool("XL_LOG_TO_FILE", "true")
    log_dir: str = os.getenv("XL_LOG_DIR", "logs")

    def __post_init__(self):
        """Проверяет согласованность значений из окружения."""
        if self.default_trials < 1:
            raise ValueError("XL_TRIALS должен быть не меньше 1")
        if self.threads < 1:
            raise ValueError("XL_THREADS должен быть не меньше 1")
        self.log_level = self.log_level.upper()


# Глобальный экземпляр настроек
settings = Settings()
