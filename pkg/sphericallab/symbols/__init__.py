from sphericallab.symbols.bump import BumpProfile, default_bump
from sphericallab.symbols.kernel import (
    KernelValue, SpectralKernel, arithmetic_factor, block_kernel_direct,
    block_kernel_spectral, shell_profile,
)
from sphericallab.symbols.sphere import sphere_ft, sphere_ft_closed
from sphericallab.symbols.symbol import (
    ResidualReport, SymbolContext, block_l2_bound, exact_symbol, frequency_grid,
    main_symbol, residual_symbol_sup,
)

__all__ = [
    "BumpProfile", "default_bump",
    "KernelValue", "SpectralKernel", "arithmetic_factor", "block_kernel_direct",
    "block_kernel_spectral", "shell_profile",
    "sphere_ft", "sphere_ft_closed",
    "ResidualReport", "SymbolContext", "block_l2_bound", "exact_symbol", "frequency_grid",
    "main_symbol", "residual_symbol_sup",
]
