"""
Модуль field - точная арифметика в простом поле GF(p).

Сами вычисления выполняет библиотека galois: элементы поля - это 0-мерные
FieldArray, матрицы - двумерные FieldArray того же класса.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Union

import galois
import numpy as np

from apps.xl.exceptions import CompositeModulus, DivisionByZero
from logger.logger import setup_logger

logger = setup_logger(module_name=__name__)

FieldElement = galois.FieldArray
ElementLike = Union[int, np.integer, galois.FieldArray]


@dataclass(frozen=True)
class PrimeField:
    """
    Простое поле GF(p) - область коэффициентов всех многочленов и матриц.

    Экземпляр неизменяем, его можно свободно передавать между потоками.
    """

    modulus: int

    def __post_init__(self):
        if self.modulus < 2 or not galois.is_prime(self.modulus):
            raise CompositeModulus(self.modulus)

    def __reduce__(self):
        # Класс galois создаётся динамически, поэтому сериализуем только модуль
        return (PrimeField, (self.modulus,))

    @cached_property
    def GF(self) -> type[galois.FieldArray]:
        """Класс массивов galois для GF(p)."""
        return galois.GF(self.modulus)

    @property
    def order(self) -> int:
        return self.modulus

    def __call__(self, value) -> galois.FieldArray:
        """
        Приводит целое число (или массив целых) к элементам поля.

        Args:
            value: Целое число, массив целых или элемент поля

        Returns:
            FieldArray: Элемент (или массив элементов) GF(p)
        """
        if isinstance(value, galois.FieldArray):
            return value
        return self.GF(np.mod(value, self.modulus))

    def residue(self, value: ElementLike) -> int:
        """Вычет элемента в диапазоне [0, p)."""
        return int(value) % self.modulus

    def zero(self) -> galois.FieldArray:
        return self.GF(0)

    def one(self) -> galois.FieldArray:
        return self.GF(1)

    def inv(self, a: ElementLike) -> galois.FieldArray:
        """
        Обратный элемент по умножению.

        galois обращает элементы простого поля расширенным алгоритмом Евклида.

        Args:
            a: Ненулевой элемент поля

        Returns:
            FieldArray: a^(-1)

        Raises:
            DivisionByZero: если a = 0
        """
        element = self(a)
        if element == 0:
            raise DivisionByZero(f"Ноль необратим в GF({self.modulus})")
        return np.reciprocal(element)

    def inv_fermat(self, a: ElementLike) -> galois.FieldArray:
        """Обратный элемент по малой теореме Ферма: a^(p-2)."""
        element = self(a)
        if element == 0:
            raise DivisionByZero(f"Ноль необратим в GF({self.modulus})")
        return element ** (self.modulus - 2)

    def pow(self, a: ElementLike, e: int) -> galois.FieldArray:
        """
        Возведение в неотрицательную степень (square-and-multiply внутри galois).

        Принято соглашение 0^0 = 1: так вычисляется константный моном.

        Args:
            a: Элемент поля
            e: Неотрицательный показатель

        Returns:
            FieldArray: a^e
        """
        if e < 0:
            raise ValueError(f"Показатель должен быть неотрицательным, получено {e}")
        if e == 0:
            return self.one()
        return self(a) ** e

    def __str__(self) -> str:
        return f"GF({self.modulus})"


def make_field(p: int) -> PrimeField:
    """
    Создаёт поле GF(p), проверяя простоту модуля.

    Args:
        p: Модуль поля, p >= 2

    Returns:
        PrimeField: Дескриптор поля

    Raises:
        CompositeModulus: если p не является простым
    """
    field = PrimeField(int(p))
    logger.debug(f"Создано поле {field}")
    return field
