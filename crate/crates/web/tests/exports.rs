use mdeg_web::{classify_json, construct_json, grid_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn classify_reports_verdict_and_lines() {
    let v = parse(&classify_json("5, 4, 3").unwrap());
    assert_eq!(v["verdict"], "not_tame");
    assert_eq!(v["degrees"], serde_json::json!([3, 4, 5]));
    assert_eq!(v["evidence"]["certificate"]["kind"], "spatial");
    assert!(v["lines"].as_array().unwrap().len() >= 6);

    let v = parse(&classify_json("4 5 6").unwrap());
    assert_eq!(v["verdict"], "unknown");
    let v = parse(&classify_json("2 3").unwrap());
    assert_eq!(v["verdict"], "not_tame");
    let v = parse(&classify_json("3 4 7").unwrap());
    assert_eq!(v["verdict"], "realizable");
    assert_eq!(v["lines"][0], "x1 += x3^3");
}

#[test]
fn bad_input_is_an_error() {
    assert!(classify_json("").is_err());
    assert!(classify_json("3 x 5").is_err());
    assert!(classify_json("0 4 5").is_err());
    assert!(classify_json("3 4 5 6").is_err());
    assert!(classify_json("3 4 1000").is_err());
    assert!(construct_json("4 5 6").is_err());
    assert!(grid_json(5, 4).is_err());
    assert!(grid_json(3, 100).is_err());
}

#[test]
fn construct_keeps_requested_order() {
    let v = parse(&construct_json("7,3,4").unwrap());
    assert_eq!(v["degrees"], serde_json::json!([7, 3, 4]));
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 3);
    for (c, d) in comps.iter().zip([7, 3, 4]) {
        let p = mdeg::Polynomial::parse(c.as_str().unwrap(), 3).unwrap();
        assert_eq!(p.total_degree().finite(), Some(d));
    }
}

#[test]
fn grid_shape_and_known_cells() {
    let v = parse(&grid_json(3, 12).unwrap());
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 10);
    assert_eq!(cells[0].as_array().unwrap().len(), 10);
    // (3, 4, 5)
    assert_eq!(cells[1][1], "not_tame");
    // (3, 5, 7)
    assert_eq!(cells[2][2], "not_tame");
    // (3, 4, 7)
    assert_eq!(cells[1][3], "realizable");
}
