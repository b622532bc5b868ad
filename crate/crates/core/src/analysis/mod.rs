//! Structural analysis: separators, saturation and split advice.

mod saturation;
mod separator;
mod split;

pub use saturation::{check_witness, refute_saturation, SaturationBounds, SaturationSearch, SaturationWitness};
pub use separator::{find_separator, monadicity_report, separates, SeparatorBounds, SeparatorSearch, SeparatorTable};
pub use split::{split_advice, SplitAdvice, SplitBounds, SplitVerdict};
