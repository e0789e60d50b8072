from nspnp_core.regularity.quantities import (
    CKNReport as CKNReport,
    ckn as ckn,
    energy_weight as energy_weight,
    cubic_weight as cubic_weight,
    morrey_weight as morrey_weight,
)
from nspnp_core.regularity.criteria import (
    criterion_l3 as criterion_l3,
    criterion_grad as criterion_grad,
    grad_limsup as grad_limsup,
    gradient_energy as gradient_energy,
    resolvable_radii as resolvable_radii,
)
from nspnp_core.regularity.scan import (
    ScanRecord as ScanRecord,
    ScanResult as ScanResult,
    lattice_centers as lattice_centers,
    scan as scan,
)
from nspnp_core.regularity.vitali import (
    VitaliBound as VitaliBound,
    vitali_select as vitali_select,
    vitali_cover as vitali_cover,
    vitali_bound as vitali_bound,
)
from nspnp_core.regularity.rescale import RescaledHistory as RescaledHistory, rescale as rescale
from nspnp_core.regularity.probes import (
    LocalEnergyProbe as LocalEnergyProbe,
    LocalEnergyBalance as LocalEnergyBalance,
    local_energy_balance as local_energy_balance,
    local_energy_residual as local_energy_residual,
)
from nspnp_core.regularity.lemmas import (
    LemmaCheck as LemmaCheck,
    MorreyFit as MorreyFit,
    check_interpolation as check_interpolation,
    check_Cr as check_Cr,
    check_Dr as check_Dr,
    morrey_norm as morrey_norm,
    fit_morrey_constant as fit_morrey_constant,
)
from nspnp_core.regularity.report import (
    AnalysisReport as AnalysisReport,
    AnalysisSummary as AnalysisSummary,
    LocalEnergySummary as LocalEnergySummary,
)
