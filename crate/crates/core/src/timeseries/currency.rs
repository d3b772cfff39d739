use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Three-letter currency identifier (ISO 4217 style, metals included).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurrencyCode([u8; 3]);

impl CurrencyCode {
    pub fn new(code: &str) -> Result<Self> {
        let bytes = code.as_bytes();
        if bytes.len() != 3 || !bytes.iter().all(u8::is_ascii_uppercase) {
            return Err(Error::InvalidCode(code.to_string()));
        }
        Ok(CurrencyCode([bytes[0], bytes[1], bytes[2]]))
    }

    pub fn as_str(&self) -> &str {
        // Only uppercase ASCII is ever stored.
        std::str::from_utf8(&self.0).expect("currency codes are ASCII")
    }
}

impl FromStr for CurrencyCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CurrencyCode::new(s.trim())
    }
}

impl fmt::Display for CurrencyCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CurrencyCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CurrencyCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CurrencyCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        CurrencyCode::new(&s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building codes from literals in tests and examples.
///
/// Panics on malformed input.
pub fn code(s: &str) -> CurrencyCode {
    CurrencyCode::new(s).unwrap_or_else(|e| panic!("{e}"))
}

/// Liquidity class of a currency.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Group {
    /// Major currencies.
    AStar,
    /// Other liquid currencies.
    A,
    /// Less liquid currencies.
    B,
    /// Non-tradable currencies.
    C,
    Metal,
    Fictitious,
}

impl Group {
    pub const ALL: [Group; 6] = [Group::AStar, Group::A, Group::B, Group::C, Group::Metal, Group::Fictitious];

    pub fn label(self) -> &'static str {
        match self {
            Group::AStar => "A*",
            Group::A => "A",
            Group::B => "B",
            Group::C => "C",
            Group::Metal => "METAL",
            Group::Fictitious => "FICT",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A*" | "A_STAR" | "ASTAR" => Ok(Group::AStar),
            "A" => Ok(Group::A),
            "B" => Ok(Group::B),
            "C" => Ok(Group::C),
            "METAL" | "METALS" => Ok(Group::Metal),
            "FICT" | "FICTITIOUS" => Ok(Group::Fictitious),
            other => Err(Error::InvalidConfig(format!("unknown currency group {other:?}"))),
        }
    }
}

pub const MAJOR: [&str; 11] = ["USD", "EUR", "JPY", "GBP", "CHF", "CAD", "AUD", "NZD", "SEK", "NOK", "DKK"];

pub const LIQUID: [&str; 21] = [
    "CYP", "CZK", "HKD", "HUF", "IDR", "ILS", "ISK", "KRW", "MXN", "MYR", "PHP", "PLN", "SGD", "SKK", "THB", "TRY",
    "TWD", "XAG", "XAU", "XPT", "ZAR",
];

pub const LESS_LIQUID: [&str; 9] = ["ARS", "BGN", "BRL", "CLP", "KWD", "RON", "RUB", "SAR", "TTD"];

pub const NON_TRADABLE: [&str; 19] = [
    "AED", "COP", "DZD", "EGP", "FJD", "GHC", "HNL", "INR", "JMD", "JOD", "LBP", "LKR", "MAD", "PEN", "PKR", "SDD",
    "TND", "VEB", "ZMK",
];

/// Precious metals quoted as currencies. In the default table they belong to
/// group A; reports aggregate them separately as well.
pub const METALS: [&str; 3] = ["XAU", "XAG", "XPT"];

/// Code given to the fictitious Gaussian-noise currency.
pub const FICTITIOUS_CODE: &str = "FIC";

/// Mapping from currency code to liquidity group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    groups: BTreeMap<CurrencyCode, Group>,
}

impl Default for GroupTable {
    /// The 60-currency table: 11 majors, 21 liquid, 9 less liquid and 19
    /// non-tradable currencies, plus the fictitious currency.
    fn default() -> Self {
        let mut groups = BTreeMap::new();
        for (list, group) in [
            (&MAJOR[..], Group::AStar),
            (&LIQUID[..], Group::A),
            (&LESS_LIQUID[..], Group::B),
            (&NON_TRADABLE[..], Group::C),
        ] {
            for c in list {
                groups.insert(code(c), group);
            }
        }
        groups.insert(code(FICTITIOUS_CODE), Group::Fictitious);
        GroupTable { groups }
    }
}

impl GroupTable {
    pub fn empty() -> Self {
        GroupTable { groups: BTreeMap::new() }
    }

    pub fn insert(&mut self, code: CurrencyCode, group: Group) {
        self.groups.insert(code, group);
    }

    pub fn group_of(&self, code: CurrencyCode) -> Option<Group> {
        self.groups.get(&code).copied()
    }

    pub fn members(&self, group: Group) -> impl Iterator<Item = CurrencyCode> + '_ {
        self.groups.iter().filter(move |(_, g)| **g == group).map(|(c, _)| *c)
    }

    pub fn is_metal(&self, code: CurrencyCode) -> bool {
        self.group_of(code) == Some(Group::Metal) || METALS.contains(&code.as_str())
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Parses `CODE,GROUP` lines. Blank lines and `#` comments are skipped;
    /// a tab may be used instead of the comma.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = GroupTable::empty();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: idx + 1, message };
            let mut fields = line.split([',', '\t']).map(str::trim);
            let (Some(c), Some(g), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(parse_err(format!("expected CODE,GROUP, got {line:?}")));
            };
            if c.eq_ignore_ascii_case("code") {
                continue;
            }
            let c = CurrencyCode::new(c).map_err(|e| parse_err(e.to_string()))?;
            let g = g.parse::<Group>().map_err(|e| parse_err(e.to_string()))?;
            table.insert(c, g);
        }
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("code,group\n");
        for (c, g) in &self.groups {
            out.push_str(&format!("{c},{g}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_must_be_three_uppercase_letters() {
        assert!(CurrencyCode::new("USD").is_ok());
        for bad in ["usd", "US", "USDX", "U5D", "", "ÜSD"] {
            assert!(CurrencyCode::new(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn default_table_matches_group_sizes() {
        let t = GroupTable::default();
        assert_eq!(t.members(Group::AStar).count(), 11);
        assert_eq!(t.members(Group::A).count(), 21);
        assert_eq!(t.members(Group::B).count(), 9);
        assert_eq!(t.members(Group::C).count(), 19);
        assert_eq!(t.len(), 61);
        assert!(t.is_metal(code("XAU")));
        assert_eq!(t.group_of(code("XAU")), Some(Group::A));
    }

    #[test]
    fn table_text_round_trip() {
        let t = GroupTable::default();
        assert_eq!(GroupTable::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn bad_group_reports_line() {
        let err = GroupTable::parse("# groups\nUSD,A*\nEUR,Z\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }
}
