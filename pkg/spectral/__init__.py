from .tables import (
    SpectralTable, TableCell, EPolyCheck, betti_m0n, compact_betti, e1_table, f1_table,
    stratification_epoly_check,
)
from .certificate import (
    VSpaceElement, Certificate, LeadingTermReport, v_basis, v_dimension, omega, d1,
    verify_complex, verify_leading_terms, certify_nonvanishing,
)
