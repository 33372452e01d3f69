use std::collections::BTreeSet;

use pwa_core::gallery;
use pwa_core::generate::{all_tori_upto, lcg, random_automaton, AutomatonShape};
use pwa_core::{classify, AutomatonDef};
use pwa_lab::io::{self, Grid};

const DATA: [(&str, &str); 4] = [
    ("even-runs", include_str!("../data/even-runs.json")),
    ("ssu", include_str!("../data/ssu.json")),
    ("cone-labyrinth", include_str!("../data/cone-labyrinth.json")),
    ("cone-labyrinth-core", include_str!("../data/cone-labyrinth-core.json")),
];

fn sorted(mut d: AutomatonDef) -> AutomatonDef {
    d.initial.sort();
    d
}

#[test]
fn data_files_match_builtins() {
    for (name, text) in DATA {
        let built = gallery::by_name(name).unwrap();
        let def = io::parse_automaton_def(text).unwrap();
        assert_eq!(sorted(def), sorted(built.to_def()), "{name}");
        assert_eq!(io::print_automaton(&built), text, "{name}");
        let a = io::parse_automaton(text).unwrap();
        assert_eq!(classify(&a).unwrap(), classify(&built).unwrap());
    }
}

#[test]
fn data_file_shapes() {
    let shape = |name: &str| {
        let a = io::parse_automaton(DATA.iter().find(|d| d.0 == name).unwrap().1).unwrap();
        (a.states().len(), a.edges().len())
    };
    assert_eq!(shape("even-runs"), (7, 12));
    assert_eq!(shape("cone-labyrinth-core"), (10, 17));
    assert_eq!(shape("ssu").0, 11);
}

#[test]
fn automaton_json_roundtrip() {
    let mut pick = lcg(5);
    for _ in 0..50 {
        let a = random_automaton(&mut pick, &AutomatonShape { symbols: 3, max_states: 6, ..AutomatonShape::default() });
        let text = io::print_automaton(&a);
        let b = io::parse_automaton(&text).unwrap();
        assert_eq!(sorted(b.to_def()), sorted(a.to_def()));
        assert_eq!(io::print_automaton(&b), text);
    }
}

#[test]
fn grid_roundtrip_on_gallery_patterns() {
    let mut grids: Vec<Grid> = Vec::new();
    for n in 0..6 {
        grids.push(Grid::Pattern(gallery::labyrinth_xn(n)));
        grids.push(Grid::Torus(gallery::labyrinth_xn_torus(n, 3).unwrap()));
    }
    for n in 1..5 {
        for k in 1..5 {
            grids.push(Grid::Pattern(gallery::kari_moore_rectangle(n, k)));
            grids.push(Grid::Torus(gallery::kari_moore_torus(n, k)));
        }
    }
    for s in 0..20 {
        grids.push(Grid::Torus(gallery::planted_labyrinth(lcg(s))));
    }
    for t in all_tori_upto(&gallery::cone_labyrinth_alphabet(), 2, 2) {
        grids.push(Grid::Pattern(t.to_pattern()));
        grids.push(Grid::Torus(t));
    }
    for g in grids {
        let text = io::print_grid(&g);
        assert_eq!(io::parse_grid(&text, g.alphabet()).unwrap(), g, "{text}");
    }
}

#[test]
fn sparse_pattern_roundtrip() {
    let al = gallery::binary();
    let text = "origin 2 -1\n1 . 0\n. . .\n0 . 1\n";
    let p = io::parse_pattern(text, &al).unwrap();
    assert_eq!(p.len(), 4);
    let cells: BTreeSet<(i32, i32)> = p.support().map(|c| (c.x, c.y)).collect();
    assert_eq!(cells, BTreeSet::from([(2, 1), (4, 1), (2, -1), (4, -1)]));
    assert_eq!(io::print_pattern(&p), text);
}
