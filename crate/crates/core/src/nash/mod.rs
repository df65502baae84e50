//! Gauss minor ideals, blowup charts, Nash towers, the principal-parts wedge
//! and the ladder of fractional ideals `F_1, F_{n+2}, F_{(n+2)^2}, …`.

mod blowup;
mod fractional;
mod ladder;
mod wedge;

pub use blowup::{
    blowup_charts, chart_level, gauss_minor_ideal, iterate_until_smooth, nash_blowup, BlowupChart, GaussMinors,
    MinorPath, TowerNode, TowerReport, ROW_REDUCTION_ATTEMPTS,
};
pub use fractional::{prune_generators, rational_basis, FractionalIdeal};
pub use ladder::{composite_f_digits, next_f, Ladder, StepStats};
pub use wedge::{connection_wedge, principal_parts_wedge, wedge_numerator};
