use grassmirror::dop::DOp;
use grassmirror::hypergeom::{a_series_specialized, ASeriesSpec};
use grassmirror::qh::{build_qh_matrix, conjecture_report, scalar_operator};

fn computed(k: usize, n: usize) -> DOp {
    let m = build_qh_matrix(k, n, 35).unwrap();
    scalar_operator(&m, 2).unwrap().operator
}

#[test]
fn table_operators_in_canonical_form() {
    let table = [
        (2, 5, "D^7(D-1)^3 - qD^3(11D^2+11D+3) - q^2"),
        (2, 6, "D^9(D-1)^5 - qD^5(2D+1)(13D^2+13D+4) - 3q^2(3D+2)(3D+4)"),
        (3, 6, "D^10(D-1)^4 - qD^4(65D^4+130D^3+105D^2+40D+6) + 4q^2(4D+3)(4D+5)"),
    ];
    for (k, n, text) in table {
        let expected = DOp::parse(text).unwrap();
        assert!(expected.is_canonical());
        assert_eq!(computed(k, n), expected, "G({k},{n})");
    }
}

#[test]
fn g27_operators_annihilate_a_series() {
    let a = a_series_specialized(&ASeriesSpec::new(2, 7, 20)).unwrap();
    let op = computed(2, 7);
    eprintln!("G(2,7) order {} : {}", op.order(), op);
    assert!(conjecture_report(2, 7, &op, &a).unwrap().pass);
}
