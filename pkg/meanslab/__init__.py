"""meanslab - operator means on positive definite matrices and Ando-Hiai type inequality checks."""

__version__ = "0.1.0"
