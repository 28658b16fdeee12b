use pfaflab::diagrams::OrdinaryTLDiagram;
use pfaflab::exact_poly::{ExactPolynomial, SpanResult};
use pfaflab::immanants::*;
use pfaflab::pfaffian_core::{GeneralMatrix, SkewArray};

fn printed_row(l: &ExactPolynomial, m: &ExactPolynomial, n: &ExactPolynomial, c: [i64; 6]) -> ExactPolynomial {
    let prods = [l * l, l * m, l * n, m * m, m * n, n * n];
    let mut out = ExactPolynomial::zero();
    for (p, k) in prods.iter().zip(c) {
        out += &p.scale_int(k);
    }
    out
}

// coefficients of L², LM, LN, M², MN, N²
const PRINTED: [(&[(usize, usize)], [i64; 6]); 8] = [
    (&[(4, 5), (3, 6), (2, 7), (1, 8)], [1, 0, 0, 0, 0, 0]),
    (&[(1, 2), (4, 5), (3, 6), (7, 8)], [-1, 0, 0, 0, 0, 0]),
    (&[(1, 2), (4, 5), (6, 7), (3, 8)], [0, -1, 0, 0, 0, 0]),
    (&[(1, 2), (5, 6), (4, 7), (3, 8)], [-1, 0, -1, 0, 0, 0]),
    (&[(2, 3), (4, 5), (6, 7), (1, 8)], [0, 2, 0, 0, 0, 0]),
    (&[(2, 3), (1, 4), (6, 7), (5, 8)], [0, 0, 0, 1, 0, 0]),
    (&[(1, 2), (3, 4), (6, 7), (5, 8)], [1, 1, 1, 0, 1, 0]),
    (&[(1, 2), (3, 4), (5, 6), (7, 8)], [2, 0, 2, 0, 0, 1]),
];

#[test]
fn quadratic_table_against_printed_values() {
    let a = GeneralMatrix::from_skew(&SkewArray::symbolic(2));
    let [l, m, n] = printed_lmn();
    let mut mismatched = Vec::new();
    for (edges, c) in PRINTED {
        let d = OrdinaryTLDiagram::new(4, edges.to_vec()).unwrap();
        if tl_immanant(&d, &a).unwrap() != printed_row(&l, &m, &n, c) {
            mismatched.push(d.key());
        }
    }
    // the printed row for {(1,2),(3,4),(5,8),(6,7)} lacks one L·M
    assert_eq!(mismatched, vec!["T[(1,2)(3,4)(5,8)(6,7)]".to_string()]);
    let d = OrdinaryTLDiagram::new(4, vec![(1, 2), (3, 4), (6, 7), (5, 8)]).unwrap();
    assert_eq!(tl_immanant(&d, &a).unwrap(), printed_row(&l, &m, &n, [1, 2, 1, 0, 1, 0]));
}

#[test]
fn quadratic_table_rows() {
    let rows = quadratic_relation_table().unwrap();
    assert_eq!(rows.len(), 14);
    let first = rows.iter().find(|r| r.diagram == "T[(1,8)(2,7)(3,6)(4,5)]").unwrap();
    assert_eq!(first.printed.as_deref(), Some(&["1", "0", "0", "0", "0", "0"].map(String::from)[..]));
    assert_eq!(first.computed.as_deref(), Some(&["1", "0", "0", "0", "0", "0"].map(String::from)[..]));
    let cups = rows.iter().find(|r| r.diagram == "T[(1,2)(3,4)(5,6)(7,8)]").unwrap();
    assert_eq!(cups.printed.as_deref(), Some(&["2", "0", "2", "0", "0", "1"].map(String::from)[..]));
    assert!(rows.iter().all(|r| r.printed.is_some() && r.computed.is_some()));
}

#[test]
fn six_point_witness_is_not_in_span() {
    assert_eq!(non_span_witness().unwrap(), SpanResult::NotInSpan);
}

#[test]
fn minor_products_for_four_by_four() {
    let r = verify_all_imm_decompositions(4).unwrap();
    assert_eq!(r.cases, 70);
    assert!(r.passed());
}

#[test]
fn pfaffian_square_for_six_by_six() {
    assert!(verify_pfaffian_square(3).unwrap().passed());
}
