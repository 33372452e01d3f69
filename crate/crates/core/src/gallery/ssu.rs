use crate::automaton::{Automaton, AutomatonBuilder, Quantifier};
use crate::pattern::Domain;
use crate::Error;

/// At most one 1 in the whole configuration.
///
/// From a 1, four universal explorers cover the four quadrants (left then
/// up, down then left, right then down, up then right) and die on reaching
/// another 1 through the sink `k`. The turn cells are checked by an extra
/// edge from each explorer to `k`.
pub fn ssu_automaton() -> Automaton {
    let forall = Some(Quantifier::Forall);
    let mut b = AutomatonBuilder::new(["0", "1"])
        .state("a", "0", None)
        .state("b", "1", forall)
        .state("d", "0", forall)
        .state("c", "0", forall)
        .state("e", "0", forall)
        .state("f", "0", forall)
        .state("g", "0", None)
        .state("h", "0", None)
        .state("i", "0", None)
        .state("j", "0", None)
        .state("k", "1", None)
        .initial("0", "a")
        .initial("1", "b")
        .edge("a", "a", 0, 0);
    // explorer, its first leg, its turned leg, the column/row scanner
    let legs = [
        ("d", (-1, 0), (0, 1), "g"),
        ("c", (0, -1), (-1, 0), "h"),
        ("e", (1, 0), (0, -1), "i"),
        ("f", (0, 1), (1, 0), "j"),
    ];
    for (x, (dx, dy), _, _) in legs {
        b = b.edge("b", x, dx, dy);
    }
    for (dx, dy) in [(0, 1), (0, -1), (1, 0), (-1, 0)] {
        b = b.edge("b", "k", dx, dy);
    }
    for (x, (dx, dy), (tx, ty), s) in legs {
        b = b
            .edge(x, x, dx, dy)
            .edge(x, "k", dx, dy)
            .edge(x, s, tx, ty)
            .edge(x, "k", tx, ty)
            .edge(s, s, tx, ty)
            .edge(s, "k", tx, ty);
    }
    b.build().expect("static automaton")
}

/// Patterns: at most one 1. Tori: no 1, since a periodic 1 repeats forever.
pub fn in_ssu<'a>(x: impl Into<Domain<'a>>) -> Result<bool, Error> {
    let bin = super::binary();
    Ok(match x.into() {
        Domain::Torus(t) => t.with_alphabet(&bin)?.count(crate::Sym(1)) == 0,
        Domain::Pattern(p) => p.with_alphabet(&bin)?.count(crate::Sym(1)) <= 1,
    })
}
