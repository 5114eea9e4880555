use dimwit::catalog::{get_case, reproduce, ReproduceOptions, Status};
use dimwit::classical::equivalent;
use dimwit::rational::int;

fn fast() -> ReproduceOptions {
    ReproduceOptions {
        seesaw: false,
        ..ReproduceOptions::default()
    }
}

#[test]
fn wj_entry() {
    let e = get_case("WJ").unwrap();
    assert_eq!(e.witness.nonzero_count(), 8);
    assert_eq!(*e.witness.bound(), int(2));
}

#[test]
fn appendix_rows_all_pass() {
    let r = reproduce("APPENDIX_A_ALL", &fast()).unwrap();
    let facets: Vec<_> = r.rows.iter().filter(|r| r.quantity == "facet d=2").collect();
    assert_eq!(facets.len(), 13);
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn wd_rows_pass() {
    let r = reproduce("WD", &fast()).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let q: Vec<&str> = r.rows.iter().map(|r| r.quantity.as_str()).collect();
    assert_eq!(q, ["C_2", "C_3", "C_4", "Q_ref", "eta", "W(mix at eta) = C_2"]);
}

#[test]
fn wk_is_appendix_one() {
    let wk = get_case("WK").unwrap();
    let a1 = get_case("APPENDIX_A_1").unwrap();
    assert!(equivalent(&wk.witness, &a1.witness).unwrap());
}

#[test]
fn appendix_classes_are_distinct() {
    let ws: Vec<_> = (1..=13).map(|k| get_case(&format!("APPENDIX_A_{k}")).unwrap().witness).collect();
    for i in 0..13 {
        for j in i + 1..13 {
            assert!(!equivalent(&ws[i], &ws[j]).unwrap(), "{} ~ {}", i + 1, j + 1);
        }
    }
}

#[test]
fn reports_render() {
    let r = reproduce("WK", &fast()).unwrap();
    let text = r.to_text();
    assert!(text.lines().next().unwrap().starts_with("case"));
    assert!(text.contains("rows, 0 failed"));
    let csv = r.to_csv();
    assert_eq!(csv.lines().count(), r.rows.len() + 1);
    for line in csv.lines().skip(1) {
        let mut fields = 1;
        let mut quoted = false;
        for c in line.chars() {
            match c {
                '"' => quoted = !quoted,
                ',' if !quoted => fields += 1,
                _ => {}
            }
        }
        assert_eq!(fields, 7, "{line}");
    }
    assert!(r.rows.iter().all(|row| row.status == Status::Pass));
}
