"""Ising-anyon topological quantum computation simulator"""

__version__ = "0.1.0"
__author__ = "Surya B"
__email__ = "myselfsuryaaz@gmail.com"
