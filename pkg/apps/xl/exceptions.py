"""
Иерархия ошибок приложения xl.

Сервисы бросают эти исключения, команды управления переводят их в коды выхода.
Ошибки с дополнительными полями переопределяют __reduce__: эксперименты идут
в пуле процессов, и исключение должно пережить pickle.
"""


class XLError(Exception):
    """Базовая ошибка приложения."""


class CompositeModulus(XLError, ValueError):
    """Модуль поля не является простым числом."""

    def __init__(self, modulus: int):
        self.modulus = modulus
        super().__init__(f"Модуль {modulus} не является простым числом")

    def __reduce__(self):
        return (self.__class__, (self.modulus,))


class DivisionByZero(XLError, ZeroDivisionError):
    """Попытка обратить ноль в GF(p)."""


class DimensionMismatch(XLError, ValueError):
    """Размерность точки или многочлена не совпадает с числом переменных."""


class DTooSmall(XLError, ValueError):
    """Максимальная степень D меньше 1 + max deg(f_i)."""

    def __init__(self, D: int, minimum: int):
        self.D = D
        self.minimum = minimum
        super().__init__(f"D={D} слишком мало: требуется D >= {minimum}")

    def __reduce__(self):
        return (self.__class__, (self.D, self.minimum))


class UnsupportedC(XLError, ValueError):
    """Порог D_m поддерживается только для c ∈ {1, 2}."""

    def __init__(self, c: int):
        self.c = c
        super().__init__(f"c={c} не поддерживается: допустимы только c=1 и c=2")

    def __reduce__(self):
        return (self.__class__, (self.c,))


class UnimodalityViolation(XLError):
    """Строка мультиномиальных коэффициентов не строго унимодальна."""


class SearchSpaceTooLarge(XLError, ValueError):
    """Полный перебор GF(p)^n превышает допустимый предел."""

    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"Пространство перебора {size} превышает предел {limit}")

    def __reduce__(self):
        return (self.__class__, (self.size, self.limit))


class ParseError(XLError, ValueError):
    """Ошибка разбора текстового представления многочлена или системы."""


class BudgetExceeded(XLError):
    """Матрица Маколея больше разрешённого бюджета ячеек."""

    def __init__(self, p: int, d: int, n: int, D: int, cells: int, budget: int):
        self.p = p
        self.d = d
        self.n = n
        self.D = D
        self.cells = cells
        self.budget = budget
        super().__init__(
            f"Бюджет превышен для (p={p}, d={d}, n={n}, D={D}): "
            f"{cells} ячеек > {budget}"
        )

    def __reduce__(self):
        return (
            self.__class__,
            (self.p, self.d, self.n, self.D, self.cells, self.budget),
        )


class SufficiencyViolation(XLError, AssertionError):
    """χ(D) ≤ D, но одномерное уравнение не найдено."""

    def __init__(self, D: int, chi: int):
        self.D = D
        self.chi = chi
        super().__init__(
            f"χ({D}) = {chi} <= {D}, но одномерное уравнение не получено"
        )

    def __reduce__(self):
        return (self.__class__, (self.D, self.chi))


class DegreeSearchExhausted(XLError):
    """Ни одно D до верхней границы не дало одномерного уравнения."""

    def __init__(self, D_cap: int):
        self.D_cap = D_cap
        super().__init__(f"Одномерное уравнение не найдено при D <= {D_cap}")

    def __reduce__(self):
        return (self.__class__, (self.D_cap,))
