"""
fracdecay - a laboratory for nonlocal zero-order heat equations

Simulates u_t(x) = \\int J(x,y)[u(y) - u(x)] dy with bounded, heavy-tailed
kernels on truncated lattices, checks the energy-method inequalities behind
the fractional decay bounds on discrete fields, and fits the observed L^q
decay exponents against n/(2 sigma) (1 - 1/q).
"""

__version__ = "0.1.0"
