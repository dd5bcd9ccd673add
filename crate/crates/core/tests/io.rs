use std::fs;

use k3lattice::claims::{fixtures, io};
use k3lattice::glue::{build_named, NamedLattice};
use k3lattice::{Error, Lattice};

#[test]
fn corpus_files_all_load() {
    let mut n = 0;
    for entry in fs::read_dir(io::data_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "lattice") {
            let l = io::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert!(l.name().is_some());
            n += 1;
        }
    }
    assert!(n >= 20);
}

#[test]
fn corpus_matches_constructions() {
    assert_eq!(io::load_data("T.lattice").unwrap().gram(), fixtures::t().gram());
    assert_eq!(io::load_data("T.lattice").unwrap().det(), 36.into());
    assert_eq!(io::load_data("R.lattice").unwrap().gram(), fixtures::r1156().gram());
    for name in NamedLattice::catalogue() {
        let file = name.to_string().replace(['(', ')', '\''], "").replace(',', "_") + ".lattice";
        let stored = io::load_data(&file).unwrap();
        assert_eq!(stored.gram(), build_named(&name).unwrap().gram(), "{name}");
    }
}

#[test]
fn embedded_file_keeps_ambient() {
    let l = io::load_data("Lp17_in_Lambda3.lattice").unwrap();
    let e = l.embedding().unwrap();
    assert_eq!(e.ambient.name(), Some("Lambda(3)"));
    let again = io::parse(&io::to_json(&l)).unwrap();
    assert_eq!(again.embedding().unwrap().basis, e.basis);
}

#[test]
fn malformed_files_are_rejected() {
    let cases = [
        (r#"{"name":"x","gram":[[2,1],[1,2]],"extra":1}"#, "unknown field"),
        (r#"{"name":"x","gram":[[2,"z"],["z",2]]}"#, "not an integer"),
        (r#"{"name":"x","gram":[[0,0],[0,0]]"#, "EOF"),
    ];
    for (text, fragment) in cases {
        match io::parse(text) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains(fragment), "{msg}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    let basis_mismatch = r#"{"name":"x","gram":[[-2]],"ambient":"Lambda(3)","basis":[[0,1,0,0,0,0]]}"#;
    assert!(matches!(io::parse(basis_mismatch), Err(Error::DimensionMismatch(_))));
    assert!(matches!(
        io::parse(r#"{"name":"x","gram":[[2]],"ambient":"W","basis":[[1]]}"#),
        Err(Error::UnknownName(_))
    ));
}

#[test]
fn save_and_load() {
    let dir = tempfile::tempdir().unwrap();
    let l = Lattice::from_i64(&[&[2, 1], &[1, -4]]).unwrap().named("tiny");
    let p = dir.path().join("tiny.lattice");
    io::save(&l, &p).unwrap();
    let back = io::load(&p).unwrap();
    assert_eq!((back.name(), back.gram()), (Some("tiny"), l.gram()));
}
