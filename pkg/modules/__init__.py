"""
Modules de calcul de RepVar Calculator
"""
