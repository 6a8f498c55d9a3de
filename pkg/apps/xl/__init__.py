"""
Приложение xl - алгоритм XL над простыми полями и предсказание оптимальной степени D.
"""
