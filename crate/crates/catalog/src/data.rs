// Rows separated by `;`, entries by whitespace, `a` the generator of GF(4).

pub(crate) const V1: &str = "1 0 0 1 0 1 1 1 1; 0 1 0 1 1 a^2 a^2 a 0; 0 0 1 0 1 1 a 1 a";
pub(crate) const V2: &str = "1 0 0 0 1 1 1 0; 0 1 0 0 a^2 a a 1; 0 0 1 0 a a^2 a 1; 0 0 0 1 a^2 a^2 a a";
pub(crate) const V3: &str = "1 0 0 0 1 0 1 1 1; 0 1 0 0 a 1 a^2 a^2 1; 0 0 1 0 a 1 a 1 a^2; 0 0 0 1 0 1 1 0 0";
pub(crate) const P1: &str = "0 1 1 1 1 1 0 0 0; 0 1 a 0 0 0 1 1 1; 1 0 0 1 a a^2 1 a a^2";
pub(crate) const P2: &str = "1 0 0 0 1 0 1 1; 0 1 0 0 a 1 1 1; 0 0 1 0 1 1 0 1; 0 0 0 1 a^2 1 a^2 0";
pub(crate) const P3: &str = "0 1 1 1 1 1 1 0 0; 0 1 a a^2 0 0 0 1 1; 1 0 0 0 1 a a^2 1 a";

pub(crate) const F7: &str = "1 0 0 1 1 0 1; 0 1 0 1 0 1 1; 0 0 1 0 1 1 1";
pub(crate) const PAPPUS: &str = "1 0 0 1 0 a a^2 a^2 a^2; 0 1 0 0 1 a 1 a^2 a; 0 0 1 1 1 1 0 1 1";
/// `[I3 | D3 | III']`, columns 1..11 in order.
pub(crate) const B11: &str = "1 0 0 1 1 0 a a a^2 1 0; 0 1 0 1 0 1 a 1 a^2 a a; 0 0 1 0 1 1 1 0 1 1 1";
/// `[I3 | D3 | IV']`; column k carries the label `B11_IV_LABELS[k]`.
pub(crate) const B11_IV: &str = "1 0 0 1 1 0 a a^2 a 0 a^2; 0 1 0 1 0 1 a 1 0 a^2 a; 0 0 1 0 1 1 1 0 1 1 1";
pub(crate) const B11_IV_LABELS: [&str; 11] = ["1", "8", "10", "2", "11", "6", "5", "4", "7", "9", "3"];
/// The automorphism of B11 as (k, image of k).
pub(crate) const B11_PHI: [(u8, u8); 11] =
    [(1, 4), (2, 3), (3, 6), (4, 9), (5, 5), (6, 11), (7, 8), (8, 7), (9, 10), (10, 1), (11, 2)];

pub(crate) const ROMAN: [(&str, &str); 18] = [
    ("I", "1 1 a a a a^2; a a a a a^2 a; a a 1 1 1 1; 1 0 1 0 0 0; 0 1 0 1 0 0"),
    ("II", "1 a 1 a^2 0; a a a^2 0 1; a 1 0 a^2 a; 1 0 a^2 1 a; 0 1 1 1 1"),
    ("III", "1 a^2 1 a a^2; a a a^2 1 0; a 1 a^2 a a; 1 0 1 1 1"),
    ("IV", "1 a a^2 a 0; a a^2 a 0 a^2; a 1 0 a^2 a; 1 0 1 1 1"),
    ("V", "1 a 0; a a^2 0; a 0 a^2; 1 0 a; 0 1 1"),
    ("VI", "1 a a^2 a a; a a^2 1 a^2 a^2; a 0 a^2 1 0; 1 0 1 0 1; 0 1 0 0 0"),
    ("VII", "1 1 a a a a^2; a a a^2 a^2 a^2 a; a a 1 0 0 1; 1 0 0 1 0 0; 0 1 0 0 1 0"),
    ("VIII", "1 a^2 a a^2; a a 0 a^2; a 1 a^2 1; 1 0 1 1"),
    ("IX", "1 1 a a^2; a a^2 a a^2; a a^2 1 1; 1 1 1 1"),
    ("X", "a a a a^2 a; a^2 0 a^2 0 0; 0 a^2 1 a a^2; 1 0 0 0 1; 0 1 0 1 0"),
    ("XI", "a a a^2 a^2; a^2 0 0 a; 0 a^2 a 0; 1 0 0 1; 0 1 1 0"),
    ("XII", "a a a a^2 a a; a^2 0 a^2 a a^2 0; 0 a^2 1 1 0 a^2; 1 0 0 0 0 1; 0 1 0 0 1 0"),
    ("XIII", "a a a a a^2; a^2 0 a^2 a^2 0; 0 a^2 1 0 a; 1 0 0 0 0; 0 1 0 1 1"),
    ("XIV", "a a a a a^2 a; a^2 0 a^2 a^2 a 0; 0 a^2 1 0 0 0; 1 0 0 0 0 a^2; 0 1 0 1 1 1"),
    ("XV", "a a a^2 a^2; a^2 a^2 a a; 1 0 1 0; 0 1 0 1"),
    ("XVI", "1 a 1 0; a a^2 a^2 a^2; a 1 a^2 a; 1 0 1 1"),
    ("XVII", "a a^2 0 a; a^2 a a^2 0; 1 0 a a^2; 0 1 1 1"),
    ("XVIII", "1 a^2 a^2; a a 0; a 1 a; 1 0 1"),
];

/// Forbidden P1 submatrices: (name, rows, rank of the host when stated,
/// excluded minor).
pub(crate) const TABLE: [(&str, &str, Option<usize>, &str); 20] = [
    ("A", "1; 1", Some(3), "F7"),
    ("B", "1; a; a^2", Some(4), "V2"),
    ("C", "a; a; a", Some(4), "F7*"),
    ("D", "a; a; a^2", Some(4), "V2"),
    ("E", "a 0; a 0; 0 a", Some(5), "F7*"),
    ("F", "a 0; a 0; 0 a^2", Some(5), "F7*"),
    ("G", "1 0; a a", Some(3), "F7"),
    ("H", "1 0; a a^2", Some(4), "F7*"),
    ("I", "1 a^2; a 1", Some(4), "P2"),
    ("J", "a a; a 0", Some(4), "P2"),
    ("K", "1 1; a a^2", Some(3), "F7"),
    ("L", "a^2 0; a 0; 0 a", Some(5), "P2"),
    ("M", "a a^2 0; a 0 a^2", Some(3), "F7"),
    ("N", "a^2 a 0; 0 0 a^2", Some(4), "P2"),
    ("O", "1 a a; a 1 a", Some(3), "V1"),
    ("P", "a a 0; a^2 0 a", Some(4), "F7*"),
    ("Q", "a^2 a 0; a 0 a^2", Some(3), "F7"),
    ("R", "1 a; a 1; a 0", Some(4), "F7*"),
    ("S", "a 0 0; 0 a 0; 0 0 a", None, "P2"),
    ("T", "a 0 0; 0 a 0; 0 0 a^2", None, "P2"),
];

/// The GF(4)/GF(5) pair `[I3 | D3 | -P1; I]` for the T^2 template.
pub(crate) const T2_PAIR: (&str, &str) = (
    "1 0 0 1 1 0 a a^2; 0 1 0 1 0 1 1 0; 0 0 1 0 1 1 0 1",
    "1 0 0 1 1 0 2 1; 0 1 0 4 0 1 1 0; 0 0 1 0 4 4 0 1",
);
