//! Modular form q-expansions: eta quotients, weight-3 Eisenstein series of
//! level 5, the calibrated pair (E1, E2), and the three-form basis of the
//! weight-3 noncongruence space.

pub mod calibrate;
pub mod eisenstein;
pub mod eta;

use crate::error::{Error, Result};

/// Names of the series the toolkit can produce, with their cusp widths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FormLabel {
    E1,
    E2,
    H1,
    H2,
    H3,
    F1,
    F3,
    F5,
    F7,
    FPrime,
    G2,
    H1PlusH3,
    H1MinusH3,
    H1PlusIH3,
    H1MinusIH3,
}

impl FormLabel {
    pub fn name(&self) -> &'static str {
        match self {
            FormLabel::E1 => "E1",
            FormLabel::E2 => "E2",
            FormLabel::H1 => "h1",
            FormLabel::H2 => "h2",
            FormLabel::H3 => "h3",
            FormLabel::F1 => "f1",
            FormLabel::F3 => "f3",
            FormLabel::F5 => "f5",
            FormLabel::F7 => "f7",
            FormLabel::FPrime => "fprime",
            FormLabel::G2 => "g2",
            FormLabel::H1PlusH3 => "h1+h3",
            FormLabel::H1MinusH3 => "h1-h3",
            FormLabel::H1PlusIH3 => "h1+ih3",
            FormLabel::H1MinusIH3 => "h1-ih3",
        }
    }

    /// Width of the cusp at infinity for the group the form lives on: the
    /// congruence index n of the series variable w = q^(1/width).
    pub fn width(&self) -> u32 {
        match self {
            FormLabel::E1 | FormLabel::E2 => 5,
            FormLabel::H2 => 10,
            FormLabel::H1
            | FormLabel::H3
            | FormLabel::H1PlusH3
            | FormLabel::H1MinusH3
            | FormLabel::H1PlusIH3
            | FormLabel::H1MinusIH3 => 20,
            FormLabel::F1 | FormLabel::F3 | FormLabel::F5 | FormLabel::F7 | FormLabel::FPrime => 8,
            FormLabel::G2 => 1,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let all = [
            FormLabel::E1,
            FormLabel::E2,
            FormLabel::H1,
            FormLabel::H2,
            FormLabel::H3,
            FormLabel::F1,
            FormLabel::F3,
            FormLabel::F5,
            FormLabel::F7,
            FormLabel::FPrime,
            FormLabel::G2,
            FormLabel::H1PlusH3,
            FormLabel::H1MinusH3,
            FormLabel::H1PlusIH3,
            FormLabel::H1MinusIH3,
        ];
        all.into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown form label {:?}", s)))
    }
}

impl std::fmt::Display for FormLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
