//! Checks built on top of the measures: monogamy, concavity of reduced
//! functions, upper bounds, coherence and figure tables.

mod bounds;
mod coherence;
mod concavity;
mod figures;
mod monogamy;
mod orderings;

pub use bounds::{bounds_check, BoundsReport};
pub use coherence::{coherence_ch, coherence_pure};
pub use concavity::{
    concavity_scan, mixing_margin, mixing_monotonicity_check, mixture_majorization_check, ConcavityReport,
    MajorizationReport, MixingMargin, MixingSample, StrictVerdict, DEFICIT_TOL, EQUALITY_TOL,
};
pub use figures::{fig1_point, fig2_point, figure_scan, FigureFamily, FigureRow};
pub use monogamy::{
    acin_disentangling_probe, monogamy_check, npt_witness, AcinProbe, MonogamyOptions, MonogamyReport, Verdict,
    GAP_TOL, WITNESS_FLOOR,
};
pub use orderings::{ordering_reversals, OrderingReversal};
