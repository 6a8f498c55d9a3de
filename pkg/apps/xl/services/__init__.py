"""
Сервисы приложения xl: поле, многочлены, мультиномиальные коэффициенты,
ряды Гильберта, сам алгоритм XL, оракулы и экспериментальный стенд.
"""
