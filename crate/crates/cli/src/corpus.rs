//! The shipped problem files, embedded at build time.

use crate::problem::Problem;

const FILES: [(&str, &str); 10] = [
    ("glued-curve", include_str!("../../../corpus/glued-curve.json")),
    ("monomial-curve-pair", include_str!("../../../corpus/monomial-curve-pair.json")),
    ("non-qh-space-curve", include_str!("../../../corpus/non-qh-space-curve.json")),
    ("nonfree-surface", include_str!("../../../corpus/nonfree-surface.json")),
    ("normal-crossing", include_str!("../../../corpus/normal-crossing.json")),
    ("normal-crossing-plane", include_str!("../../../corpus/normal-crossing-plane.json")),
    ("plane-cusp", include_str!("../../../corpus/plane-cusp.json")),
    ("plane-lines", include_str!("../../../corpus/plane-lines.json")),
    ("qh-space-curve", include_str!("../../../corpus/qh-space-curve.json")),
    ("smooth-hypersurface", include_str!("../../../corpus/smooth-hypersurface.json")),
];

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub name: &'static str,
    pub source: &'static str,
    pub problem: Problem,
}

/// Every corpus item, sorted by name.
pub fn items() -> Vec<CorpusItem> {
    FILES
        .iter()
        .map(|&(name, source)| CorpusItem {
            name,
            source,
            problem: Problem::parse_str(source).unwrap_or_else(|e| panic!("corpus file {}: {}", name, e)),
        })
        .collect()
}

pub fn get(name: &str) -> CorpusItem {
    items().into_iter().find(|i| i.name == name).unwrap_or_else(|| panic!("no corpus item {}", name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_files_parse_and_round_trip() {
        for item in items() {
            assert_eq!(item.problem.id.as_deref(), Some(item.name));
            assert!(item.problem.description.is_some(), "{}", item.name);
            let again = Problem::parse_str(&item.problem.print()).unwrap();
            assert_eq!(again, item.problem, "{}", item.name);
            assert!(item.problem.log_problem().is_ok(), "{}", item.name);
        }
    }
}
