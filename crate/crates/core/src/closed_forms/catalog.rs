//! Static catalog of the Wilf classes of lengths 2 and 3.
//!
//! Each row carries its representative, the first seven avoidance counts,
//! the cited sequence id (if any), a short rendering of the closed form, and
//! the member patterns that are known to belong to the class. A member given
//! with `X=*` stands for every choice of `X`.

use super::FormulaId;

pub struct CatalogEntry {
    pub id: FormulaId,
    pub representative: &'static str,
    pub table_terms: [u64; 7],
    pub oeis: Option<&'static str>,
    pub formula: Option<&'static str>,
    pub members: &'static [&'static str],
}

const CLASS_A: &[&str] = &[
    "123|X=|Y=0,1",
    "123|X=|Y=0,3",
    "123|X=0|Y=1,2",
    "123|X=0|Y=1,3",
    "123|X=0|Y=2,3",
    "123|X=1|Y=0,2",
    "123|X=1|Y=0,3",
    "123|X=1|Y=2,3",
    "132|X=|Y=0,1",
    "132|X=|Y=0,3",
    "132|X=|Y=2,3",
    "132|X=0|Y=1,2",
    "132|X=0|Y=1,3",
    "132|X=0|Y=2,3",
    "132|X=1|Y=0,1",
    "132|X=1|Y=0,2",
    "132|X=1|Y=1,3",
    "132|X=1|Y=2,3",
    "132|X=0,1|Y=2",
    "132|X=2|Y=0,3",
    "132|X=2|Y=1,3",
    "132|X=0,2|Y=3",
    "132|X=1,2|Y=3",
    "132|X=3|Y=0,3",
    "132|X=3|Y=1,3",
];

const CLASS_B: &[&str] = &[
    "123|X=0|Y=0,1",
    "123|X=0|Y=0,3",
    "123|X=1|Y=0,1",
    "123|X=0,1|Y=0,2",
    "123|X=0,1|Y=1,2",
    "123|X=0,1|Y=0,3",
    "123|X=0,1|Y=1,3",
    "123|X=0,1|Y=2,3",
    "123|X=0,2|Y=1,2",
    "123|X=0,2|Y=0,3",
    "123|X=0,2|Y=1,3",
    "123|X=1,2|Y=0,3",
    "132|X=0|Y=0,1",
    "132|X=0|Y=0,3",
    "132|X=1|Y=0,3",
    "132|X=0,1|Y=0,1",
    "132|X=0,1|Y=0,2",
    "132|X=0,1|Y=1,2",
    "132|X=0,1|Y=3",
    "132|X=0,1|Y=1,3",
    "132|X=0,1|Y=2,3",
    "132|X=2|Y=2,3",
    "132|X=0,2|Y=1,2",
    "132|X=0,2|Y=0,3",
    "132|X=0,2|Y=1,3",
    "132|X=0,2|Y=2,3",
    "132|X=1,2|Y=0,3",
    "132|X=1,2|Y=1,3",
    "132|X=1,2|Y=2,3",
    "132|X=3|Y=2,3",
    "132|X=0,3|Y=0,3",
    "132|X=0,3|Y=1,3",
    "132|X=0,3|Y=2,3",
    "132|X=1,3|Y=1,3",
    "132|X=1,3|Y=2,3",
];

const CLASS_C: &[&str] = &[
    "123|X=0|Y=0,1,2",
    "123|X=0|Y=0,1,3",
    "123|X=0|Y=0,2,3",
    "123|X=0|Y=1,2,3",
    "123|X=1|Y=0,1,2",
    "123|X=1|Y=0,1,3",
    "123|X=1|Y=0,2,3",
    "123|X=1|Y=1,2,3",
    "132|X=0|Y=0,1,2",
    "132|X=0|Y=0,1,3",
    "132|X=0|Y=0,2,3",
    "132|X=0|Y=1,2,3",
    "132|X=1|Y=0,1,2",
    "132|X=1|Y=0,1,3",
    "132|X=1|Y=0,2,3",
    "132|X=1|Y=1,2,3",
    "132|X=2|Y=0,1,2",
    "132|X=2|Y=0,1,3",
    "132|X=2|Y=0,2,3",
    "132|X=2|Y=1,2,3",
    "132|X=0,1,2|Y=3",
    "132|X=3|Y=0,1,3",
    "132|X=3|Y=0,2,3",
    "132|X=3|Y=1,2,3",
];

const CLASS_D: &[&str] = &[
    "123|X=0,1|Y=0,1",
    "123|X=0,1|Y=0,1,2",
    "123|X=0,1|Y=0,1,3",
    "123|X=0,1|Y=0,2,3",
    "123|X=0,1|Y=1,2,3",
    "123|X=0,2|Y=0,1,2",
    "123|X=0,2|Y=0,1,3",
    "123|X=0,2|Y=0,2,3",
    "123|X=0,2|Y=1,2,3",
    "123|X=1,2|Y=0,1,2",
    "123|X=1,2|Y=0,1,3",
    "123|X=0,1,2|Y=0,3",
    "123|X=0,3|Y=0,3",
    "123|X=0,3|Y=0,1,3",
    "132|X=0,1|Y=0,1,2",
    "132|X=0,1|Y=0,3",
    "132|X=0,1|Y=0,1,3",
    "132|X=0,1|Y=0,2,3",
    "132|X=0,1|Y=1,2,3",
    "132|X=0,2|Y=0,1,2",
    "132|X=0,2|Y=0,1,3",
    "132|X=0,2|Y=0,2,3",
    "132|X=0,2|Y=1,2,3",
    "132|X=1,2|Y=0,1,2",
    "132|X=1,2|Y=0,1,3",
    "132|X=1,2|Y=0,2,3",
    "132|X=1,2|Y=1,2,3",
    "132|X=0,1,2|Y=0,3",
    "132|X=0,1,2|Y=1,3",
    "132|X=0,1,2|Y=2,3",
    "132|X=0,3|Y=0,1,3",
    "132|X=0,3|Y=0,2,3",
    "132|X=0,3|Y=1,2,3",
    "132|X=1,3|Y=0,1,3",
    "132|X=1,3|Y=0,2,3",
    "132|X=1,3|Y=1,2,3",
    "132|X=0,1,3|Y=2,3",
    "132|X=2,3|Y=2,3",
    "132|X=2,3|Y=0,2,3",
    "132|X=2,3|Y=1,2,3",
];

const CLASS_E: &[&str] = &[
    "123|X=0,1,2|Y=0,1,2",
    "123|X=0,1,2|Y=0,1,3",
    "123|X=0,1,2|Y=0,2,3",
    "123|X=0,1,2|Y=1,2,3",
    "123|X=0,1,3|Y=0,1,3",
    "123|X=0,1,3|Y=0,2,3",
    "132|X=0,1,2|Y=0,1,2",
    "132|X=0,1,2|Y=0,1,3",
    "132|X=0,1,2|Y=0,2,3",
    "132|X=0,1,2|Y=1,2,3",
    "132|X=0,1,3|Y=0,1,3",
    "132|X=0,1,3|Y=0,2,3",
    "132|X=0,1,3|Y=1,2,3",
    "132|X=0,2,3|Y=0,2,3",
    "132|X=0,2,3|Y=1,2,3",
    "132|X=1,2,3|Y=1,2,3",
];

/// Appendix-style member lists keyed by the class they belong to.
pub const APPENDIX_CLASSES: [(char, FormulaId, &[&str]); 5] = [
    ('A', FormulaId::C11, CLASS_A),
    ('B', FormulaId::C15, CLASS_B),
    ('C', FormulaId::C18, CLASS_C),
    ('D', FormulaId::C19, CLASS_D),
    ('E', FormulaId::C20, CLASS_E),
];

pub static CATALOG: [CatalogEntry; 31] = [
    CatalogEntry {
        id: FormulaId::B01,
        representative: "12|X=|Y=",
        table_terms: [1, 1, 1, 1, 1, 1, 1],
        oeis: Some("A000012"),
        formula: Some("1"),
        members: &["12|X=|Y=", "12|X=|Y=1"],
    },
    CatalogEntry {
        id: FormulaId::B02,
        representative: "12|X=|Y=0",
        table_terms: [1, 1, 2, 6, 24, 120, 720],
        oeis: Some("A000142"),
        formula: Some("(n-1)!"),
        members: &["12|X=|Y=0", "12|X=0|Y=1", "12|X=0|Y=2"],
    },
    CatalogEntry {
        id: FormulaId::B03,
        representative: "12|X=1|Y=1",
        table_terms: [1, 1, 3, 11, 53, 309, 2119],
        oeis: Some("A000255"),
        formula: Some("sum_{i=0}^{n-1} (-1)^i (n-i) (n-1)!/i!"),
        members: &["12|X=1|Y=1"],
    },
    CatalogEntry {
        id: FormulaId::B04,
        representative: "12|X=|Y=0,1",
        table_terms: [1, 1, 3, 12, 60, 360, 2520],
        oeis: Some("A001710"),
        formula: Some("n!/2"),
        members: &["12|X=|Y=0,1", "12|X=|Y=0,2"],
    },
    CatalogEntry {
        id: FormulaId::B05,
        representative: "12|X=0|Y=0",
        table_terms: [1, 1, 4, 18, 96, 600, 4320],
        oeis: Some("A094258"),
        formula: Some("n!-(n-1)!"),
        members: &[
            "12|X=0|Y=0",
            "12|X=0|Y=0,1",
            "12|X=0|Y=0,2",
            "12|X=0|Y=1,2",
            "12|X=1|Y=0,1",
            "12|X=1|Y=0,2",
        ],
    },
    CatalogEntry {
        id: FormulaId::B06,
        representative: "12|X=0,1|Y=0,1",
        table_terms: [1, 1, 5, 22, 114, 696, 4920],
        oeis: None,
        formula: Some("n!-(n-2)!"),
        members: &["12|X=0,1|Y=0,1", "12|X=0,1|Y=0,2", "12|X=0,1|Y=1,2", "12|X=0,2|Y=0,2"],
    },
    CatalogEntry {
        id: FormulaId::B07,
        representative: "12|X=|Y=0,1,2",
        table_terms: [1, 1, 6, 24, 120, 720, 5040],
        oeis: None,
        formula: Some("n!-[n=2]"),
        members: &["12|X=*|Y=0,1,2", "21|X=*|Y=0,1,2"],
    },
    CatalogEntry {
        id: FormulaId::C01,
        representative: "123|X=|Y=",
        table_terms: [1, 2, 5, 14, 42, 132, 429],
        oeis: Some("A000108"),
        formula: Some("Catalan(n)"),
        members: &["123|X=|Y=", "132|X=|Y=", "132|X=|Y=1"],
    },
    CatalogEntry {
        id: FormulaId::C02,
        representative: "123|X=|Y=1",
        table_terms: [1, 2, 5, 15, 52, 203, 877],
        oeis: Some("A000110"),
        formula: Some("Bell(n)"),
        members: &["123|X=|Y=1", "132|X=|Y=2"],
    },
    CatalogEntry {
        id: FormulaId::C03,
        representative: "132|X=1|Y=1",
        table_terms: [1, 2, 5, 15, 53, 217, 1014],
        oeis: Some("A022493"),
        formula: None,
        members: &["132|X=1|Y=1", "231|X=1|Y=1"],
    },
    CatalogEntry {
        id: FormulaId::C04,
        representative: "321|X=1|Y=1",
        table_terms: [1, 2, 5, 16, 61, 271, 1372],
        oeis: Some("A138265"),
        formula: None,
        members: &["321|X=1|Y=1"],
    },
    CatalogEntry {
        id: FormulaId::C05,
        representative: "132|X=1,2|Y=",
        table_terms: [1, 2, 5, 16, 63, 296, 1623],
        oeis: Some("A111004"),
        formula: None,
        members: &["132|X=1,2|Y="],
    },
    CatalogEntry {
        id: FormulaId::C06,
        representative: "132|X=|Y=3",
        table_terms: [1, 2, 5, 16, 64, 312, 1812],
        oeis: Some("A003149"),
        formula: Some("sum_{k=1}^{n} (k-1)!(n-k)!"),
        members: &["132|X=|Y=3", "132|X=|Y=1,3"],
    },
    CatalogEntry {
        id: FormulaId::C07,
        representative: "123|X=|Y=0",
        table_terms: [1, 2, 5, 16, 65, 326, 1957],
        oeis: Some("A000522"),
        formula: Some("sum_{k=0}^{n-1} (n-1)!/k!"),
        members: &["123|X=|Y=0", "123|X=0|Y=2", "132|X=|Y=0", "132|X=0|Y=2"],
    },
    CatalogEntry {
        id: FormulaId::C08,
        representative: "123|X=0|Y=1",
        table_terms: [1, 2, 5, 17, 74, 394, 2484],
        oeis: Some("A000774"),
        formula: Some("(n-1)!(1+sum_{k=1}^{n-1} 1/k)"),
        members: &[
            "123|X=0|Y=1",
            "123|X=0|Y=3",
            "132|X=0|Y=1",
            "132|X=0|Y=3",
            "132|X=1|Y=3",
            "132|X=2|Y=3",
            "132|X=3|Y=3",
        ],
    },
    CatalogEntry {
        id: FormulaId::C09,
        representative: "123|X=0,2|Y=",
        table_terms: [1, 2, 5, 17, 75, 407, 2619],
        oeis: None,
        formula: Some("sum_k a(n,k), a(n,k)=(k-1)!k^(n-k)"),
        members: &["123|X=0,2|Y=", "132|X=0,2|Y="],
    },
    CatalogEntry {
        id: FormulaId::C10,
        representative: "123|X=2|Y=2",
        table_terms: [1, 2, 5, 18, 82, 459, 3041],
        oeis: None,
        formula: None,
        members: &["123|X=2|Y=2", "132|X=2|Y=2"],
    },
    CatalogEntry {
        id: FormulaId::C11,
        representative: "123|X=|Y=0,1",
        table_terms: [1, 2, 5, 18, 84, 480, 3240],
        oeis: None,
        formula: Some("n!-(n-1)!(n-2)/2"),
        members: CLASS_A,
    },
    CatalogEntry {
        id: FormulaId::C12,
        representative: "123|X=1|Y=1,3",
        table_terms: [1, 2, 5, 19, 91, 531, 3641],
        oeis: Some("A052169"),
        formula: Some("a(n)=(n-1)a(n-1)+(n-2)a(n-2)"),
        members: &["123|X=1|Y=1,3", "132|X=2|Y=0,2"],
    },
    CatalogEntry {
        id: FormulaId::C13,
        representative: "123|X=0|Y=0",
        table_terms: [1, 2, 5, 19, 97, 601, 4321],
        oeis: None,
        formula: Some("n!-(n-1)!+1"),
        members: &["123|X=0|Y=0", "123|X=0|Y=0,2", "132|X=0|Y=0", "132|X=0|Y=0,2"],
    },
    CatalogEntry {
        id: FormulaId::C14,
        representative: "123|X=|Y=0,1,2",
        table_terms: [1, 2, 5, 20, 100, 600, 4200],
        oeis: None,
        formula: Some("5n!/6"),
        members: &[
            "123|X=|Y=0,1,2",
            "123|X=|Y=0,1,3",
            "132|X=|Y=0,1,2",
            "132|X=|Y=0,1,3",
            "132|X=|Y=0,2,3",
            "132|X=|Y=1,2,3",
        ],
    },
    CatalogEntry {
        id: FormulaId::C15,
        representative: "123|X=0|Y=0,1",
        table_terms: [1, 2, 5, 20, 102, 624, 4440],
        oeis: None,
        formula: Some("n!-(n-2)!(n-2)"),
        members: CLASS_B,
    },
    CatalogEntry {
        id: FormulaId::C16,
        representative: "132|X=1,2|Y=1,2",
        table_terms: [1, 2, 5, 20, 102, 626, 4458],
        oeis: None,
        formula: Some("n!-sum_{k>=1} (-1)^(k+1)(n-2k)!C(n-2k,k)"),
        members: &["132|X=1,2|Y=1,2"],
    },
    CatalogEntry {
        id: FormulaId::C17,
        representative: "123|X=1,2|Y=1,2",
        table_terms: [1, 2, 5, 21, 106, 643, 4547],
        oeis: Some("A002628"),
        formula: None,
        members: &["123|X=1,2|Y=1,2"],
    },
    CatalogEntry {
        id: FormulaId::C18,
        representative: "123|X=0|Y=0,1,2",
        table_terms: [1, 2, 5, 21, 108, 660, 4680],
        oeis: None,
        formula: Some("n!-(n-1)!/2"),
        members: CLASS_C,
    },
    CatalogEntry {
        id: FormulaId::C19,
        representative: "123|X=0,1|Y=0,1",
        table_terms: [1, 2, 5, 22, 114, 696, 4920],
        oeis: None,
        formula: Some("n!-(n-2)!"),
        members: CLASS_D,
    },
    CatalogEntry {
        id: FormulaId::C20,
        representative: "123|X=0,1,2|Y=0,1,2",
        table_terms: [1, 2, 5, 23, 118, 714, 5016],
        oeis: None,
        formula: Some("n!-(n-3)!"),
        members: CLASS_E,
    },
    CatalogEntry {
        id: FormulaId::C21,
        representative: "123|X=|Y=0,1,2,3",
        table_terms: [1, 2, 5, 24, 120, 720, 5040],
        oeis: None,
        formula: Some("n!-[n=3]"),
        members: &["123|X=*|Y=0,1,2,3", "132|X=*|Y=0,1,2,3"],
    },
    CatalogEntry {
        id: FormulaId::C22,
        representative: "132|X=2|Y=1,2",
        table_terms: [1, 2, 5, 18, 85, 494, 3389],
        oeis: None,
        formula: None,
        members: &["132|X=2|Y=1,2"],
    },
    CatalogEntry {
        id: FormulaId::C23,
        representative: "132|X=1|Y=1,2",
        table_terms: [1, 2, 5, 18, 86, 502, 3444],
        oeis: None,
        formula: None,
        members: &["132|X=1|Y=1,2"],
    },
    CatalogEntry {
        id: FormulaId::C24,
        representative: "123|X=1|Y=1,2",
        table_terms: [1, 2, 5, 19, 90, 523, 3573],
        oeis: None,
        formula: None,
        members: &["123|X=1|Y=1,2"],
    },
];
