//! Walks the bundled graph6 corpus, classifying every distance-regular
//! graph by whether the pair product attains |E_1| + |E_2| — the library
//! form of the `batch` subcommand.

use scheme_gauge::bounds::gauge_classification;
use scheme_gauge::graphs::parse_graph6;
use scheme_gauge::schemes::scheme_from_drg;

fn main() -> scheme_gauge::Result<()> {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/data/corpus.g6");
    for line in std::fs::read_to_string(corpus)?.lines().filter(|l| !l.trim().is_empty()) {
        let g = match parse_graph6(line.trim()) {
            Ok(g) => g,
            Err(e) => {
                println!("{line}: unreadable ({e})");
                continue;
            }
        };
        let verdict = scheme_from_drg(&g).and_then(|(s, _)| {
            if s.class_count() < 2 {
                return Err(scheme_gauge::Error::InvalidArgument("diameter < 2".into()));
            }
            gauge_classification(&s, 1, 2)
        });
        match verdict {
            Ok(c) => println!(
                "{line}: n={}, product {:.4} vs {} -> {:?}",
                g.n(),
                c.product,
                c.pair_edges,
                c.class
            ),
            Err(e) => println!("{line}: skipped ({e})"),
        }
    }
    Ok(())
}
