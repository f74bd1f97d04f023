//! Generator lists shipped with the crate.

use crate::error::Result;
use crate::exactalg::{IdealCollection, TermOrder};
use crate::groebner::Ideal;

pub const I_COMPONENTS: &str = include_str!("../../data/I_components.json");
pub const J1_H123: &str = include_str!("../../data/J1_h123.json");
pub const HG: &str = include_str!("../../data/HG.json");
pub const QUOTIENT_COMPONENTS: &str = include_str!("../../data/quotient_components.json");

/// `(file name, contents)` of every data file.
pub const FILES: [(&str, &str); 4] = [
    ("I_components.json", I_COMPONENTS),
    ("J1_h123.json", J1_H123),
    ("HG.json", HG),
    ("quotient_components.json", QUOTIENT_COMPONENTS),
];

/// The ideal called `name` in the collection `text`.
pub fn ideal(text: &str, name: &str) -> Result<Ideal> {
    Ideal::from_json(IdealCollection::parse(text)?.get(name)?, TermOrder::DegRevLex)
}
