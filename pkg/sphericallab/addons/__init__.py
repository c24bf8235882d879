from sphericallab.addons import arithmetic_checks
from sphericallab.addons import farey_check
from sphericallab.addons import lattice_checks
from sphericallab.addons import maximal_checks
from sphericallab.addons import regions_emit
from sphericallab.addons import sparse_verify
from sphericallab.addons import symbol_checks


def default_addons():
    return [
        arithmetic_checks.RamanujanMoment(),
        arithmetic_checks.LcmSum(),
        arithmetic_checks.KloostermanScan(),
        arithmetic_checks.GaussScan(),
        farey_check.FareyCheck(),
        lattice_checks.RdTable(),
        maximal_checks.MaxopRatio(),
        maximal_checks.MaxopScaling(),
        symbol_checks.SymbolCompare(),
        symbol_checks.KernelCheck(),
        regions_emit.RegionsEmit(),
        sparse_verify.SparseVerify(),
    ]
