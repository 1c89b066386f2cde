"""
Decay analysis package: predicted exponents, recorded series, power-law
fits and the Fourier-symbol cross-check.
"""

from fracdecay.decay.fitting import DecayFit, DecayVerdict, fit_decay, fit_window, verify_decay
from fracdecay.decay.series import DecaySeries, lq_column, record
from fracdecay.decay.symbol import SymbolFit, discrete_symbol_deficit, symbol_exponent_fit
from fracdecay.decay.theory import DecayRegime, decay_regime, initial_data_scale, theoretical_exponent

__all__ = [
    'DecayFit',
    'DecayVerdict',
    'fit_decay',
    'fit_window',
    'verify_decay',
    'DecaySeries',
    'lq_column',
    'record',
    'SymbolFit',
    'discrete_symbol_deficit',
    'symbol_exponent_fit',
    'DecayRegime',
    'decay_regime',
    'initial_data_scale',
    'theoretical_exponent',
]
