"""khinchine-bm - Khinchine inequalities on Hanner type/cotype norms and Banach-Mazur bounds."""

__version__ = "1.0.0"
__author__ = "khinchine-bm developers"
