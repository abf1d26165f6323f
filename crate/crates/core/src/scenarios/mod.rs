//! End-to-end reproductions built on the library modules.

mod klein;
mod picard;
mod psl2;
mod report;

pub use klein::{build_klein_rep, klein_groups};
pub use picard::{
    picard_b, picard_monodromy, picard_space, picard_targets, scenario_picard, PicardConvention,
    PICARD_BRAIDS,
};
pub use psl2::{
    b_at_base, central_omega, psl2_pipeline, scenario_psl2, space_of, Psl2Data, Psl2Options,
    PSL2_TYPE,
};
pub use report::{Check, ScenarioReport};
