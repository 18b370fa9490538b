//! Automata recognising the suffix, factor and avoidance languages of a word
//! under generalized factor order.

mod finite;
mod interval;
mod pattern;

use std::fmt;
use std::str::FromStr;

pub use finite::FiniteNfa;
pub use interval::{Arc, ArcDump, IntervalLabel, IntervalNfa, NfaDump, Simulation, StateKey};
pub use pattern::Pattern;

use crate::error::{Error, Result};

/// Which language of a word is meant: `S` words with a unique embedding that
/// is a suffix, `F` words containing the word, `A` words avoiding it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stat {
    S,
    F,
    A,
}

impl Stat {
    pub const ALL: [Stat; 3] = [Stat::S, Stat::F, Stat::A];
}

impl FromStr for Stat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(Stat::S),
            "F" | "f" => Ok(Stat::F),
            "A" | "a" => Ok(Stat::A),
            _ => Err(Error::InvalidParameter(format!("unknown statistic {s:?}, expected S, F or A"))),
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stat::S => "S",
            Stat::F => "F",
            Stat::A => "A",
        })
    }
}
