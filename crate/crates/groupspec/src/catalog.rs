use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::ggroup::GGroup;
use crate::group::FiniteGroup;
use crate::lie::{LieAlgebra, LinearMap, PrimeField, SLie};
use crate::morphism::{make_morphism_canonical, Morphism};
use crate::perm::Perm;

/// Builds a group from a catalog name:
///
/// - `sym:n`, `alt:n`, `cyc:n`, `dih:n`, `q8`
/// - `prod:a,b[,c...]` for left-associated direct products of the above
pub fn build_group(name: &str, caps: &Caps) -> Result<Arc<FiniteGroup>> {
    if let Some(body) = name.strip_prefix("prod:") {
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() < 2 {
            return Err(Error::UnknownName(name.into()));
        }
        let mut acc = build_atomic_group(parts[0], caps)?;
        for (k, part) in parts.iter().enumerate().skip(1) {
            let right = build_atomic_group(part, caps)?;
            let label = if k == parts.len() - 1 {
                name.to_string()
            } else {
                format!("prod:{}", parts[..=k].join(","))
            };
            acc = FiniteGroup::direct_product(label, acc, right, caps)?;
        }
        return Ok(acc);
    }
    build_atomic_group(name, caps)
}

fn build_atomic_group(name: &str, caps: &Caps) -> Result<Arc<FiniteGroup>> {
    if name == "q8" {
        return quaternion_group(caps);
    }
    let (kind, arg) = name
        .split_once(':')
        .ok_or_else(|| Error::UnknownName(name.into()))?;
    let n: usize = arg
        .parse()
        .map_err(|_| Error::UnknownName(name.into()))?;
    match kind {
        "sym" => {
            if n == 0 {
                return Err(Error::UnknownName(name.into()));
            }
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(Perm::from_cycles(n, "(0 1)")?);
                gens.push(full_cycle(n)?);
            }
            FiniteGroup::from_permutations(name, n, gens, caps)
        }
        "alt" => {
            if n < 3 {
                return Err(Error::UnknownName(name.into()));
            }
            let mut gens = vec![Perm::from_cycles(n, "(0 1 2)")?];
            if n > 3 {
                let pts: Vec<String> = if n % 2 == 1 {
                    (0..n).map(|i| i.to_string()).collect()
                } else {
                    (1..n).map(|i| i.to_string()).collect()
                };
                gens.push(Perm::from_cycles(n, &format!("({})", pts.join(" ")))?);
            }
            FiniteGroup::from_permutations(name, n, gens, caps)
        }
        "cyc" => {
            if n == 0 {
                return Err(Error::UnknownName(name.into()));
            }
            let gens = if n >= 2 { vec![full_cycle(n)?] } else { vec![] };
            FiniteGroup::from_permutations(name, n, gens, caps)
        }
        "dih" => {
            if n < 3 {
                return Err(Error::UnknownName(name.into()));
            }
            let rotation = full_cycle(n)?;
            let mut reflection: Vec<u32> = (0..n as u32).collect();
            for i in 0..n {
                reflection[i] = ((n - i) % n) as u32;
            }
            let gens = vec![rotation, Perm::from_images(reflection)?];
            FiniteGroup::from_permutations(name, n, gens, caps)
        }
        _ => Err(Error::UnknownName(name.into())),
    }
}

fn full_cycle(n: usize) -> Result<Perm> {
    let pts: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    Perm::from_cycles(n, &format!("({})", pts.join(" ")))
}

/// The quaternion group as a degree-8 permutation group (its action on
/// itself by right multiplication), generated by i and j.
fn quaternion_group(caps: &Caps) -> Result<Arc<FiniteGroup>> {
    // Elements ordered 1, -1, i, -i, j, -j, k, -k.
    let table_i = [2, 3, 1, 0, 7, 6, 4, 5]; // x -> x * i
    let table_j = [4, 5, 6, 7, 1, 0, 3, 2]; // x -> x * j
    let gi = Perm::from_images(table_i.to_vec())?;
    let gj = Perm::from_images(table_j.to_vec())?;
    FiniteGroup::from_permutations("q8", 8, vec![gi, gj], caps)
}

/// Builds a Lie algebra from a catalog name:
///
/// - `lie:sl2@p`, `lie:gl2@p`, `lie:heis@p`, `lie:abelian:n@p`
pub fn build_lie(name: &str) -> Result<LieAlgebra<PrimeField>> {
    let body = name
        .strip_prefix("lie:")
        .ok_or_else(|| Error::UnknownName(name.into()))?;
    let (kind, prime) = body
        .rsplit_once('@')
        .ok_or_else(|| Error::UnknownName(name.into()))?;
    let p: u32 = prime
        .parse()
        .map_err(|_| Error::UnknownName(name.into()))?;
    let field = PrimeField::new(p).ok_or_else(|| Error::UnknownName(name.into()))?;
    match kind {
        "sl2" => {
            let two = field.from_int(2);
            let m2 = field.from_int(-2);
            LieAlgebra::new(
                name,
                field,
                3,
                &[
                    (1, 0, vec![two, 0, 0]),
                    (1, 2, vec![0, 0, m2]),
                    (0, 2, vec![0, 1, 0]),
                ],
            )
        }
        "gl2" => {
            let m1 = field.from_int(-1);
            LieAlgebra::new(
                name,
                field,
                4,
                &[
                    (0, 1, vec![0, 1, 0, 0]),
                    (0, 2, vec![0, 0, m1, 0]),
                    (1, 2, vec![1, 0, 0, m1]),
                    (1, 3, vec![0, 1, 0, 0]),
                    (2, 3, vec![0, 0, m1, 0]),
                ],
            )
        }
        "heis" => LieAlgebra::new(name, field, 3, &[(0, 1, vec![0, 0, 1])]),
        _ => {
            let dims = kind
                .strip_prefix("abelian:")
                .ok_or_else(|| Error::UnknownName(name.into()))?;
            let dim: usize = dims
                .parse()
                .map_err(|_| Error::UnknownName(name.into()))?;
            Ok(LieAlgebra::abelian(name, field, dim))
        }
    }
}

/// Named embeddings for catalog pairs.
///
/// - `identity`: same name on both sides
/// - `first-factor`: `g` into `prod:g,...`
/// - `fix-last`: degree-n permutation group into the same family one
///   degree up, fixing the new point
/// - `diagonal`: `g` into `prod:g,g`
pub fn build_ggroup(
    g_name: &str,
    h_name: &str,
    embed: &str,
    caps: &Caps,
) -> Result<GGroup> {
    let g = build_group(g_name, caps)?;
    let h = build_group(h_name, caps)?;
    let morphism = embedding_morphism(&g, g_name, &h, h_name, embed)?;
    GGroup::new(morphism)
}

fn embedding_morphism(
    g: &Arc<FiniteGroup>,
    g_name: &str,
    h: &Arc<FiniteGroup>,
    h_name: &str,
    embed: &str,
) -> Result<Morphism> {
    match embed {
        "identity" => {
            if g_name != h_name {
                return Err(Error::Usage(format!(
                    "identity embedding needs matching names, got {g_name} and {h_name}"
                )));
            }
            Ok(Morphism::identity(g))
        }
        "first-factor" => {
            let expected_prefix = format!("prod:{g_name},");
            if !h_name.starts_with(&expected_prefix) {
                return Err(Error::Usage(format!(
                    "first-factor embedding needs the ambient to be prod:{g_name},..."
                )));
            }
            let cofactor = h.order() / g.order();
            let images: Vec<u32> = g.gens().iter().map(|&x| x * cofactor).collect();
            make_morphism_canonical(g, h, &images)
        }
        "fix-last" => {
            let g_repr = g
                .perm_repr()
                .ok_or_else(|| Error::Usage("fix-last needs permutation groups".into()))?;
            let h_repr = h
                .perm_repr()
                .ok_or_else(|| Error::Usage("fix-last needs permutation groups".into()))?;
            if h_repr.degree < g_repr.degree {
                return Err(Error::Usage(
                    "fix-last needs the ambient degree to be at least the base degree".into(),
                ));
            }
            let images: Vec<u32> = g
                .gens()
                .iter()
                .map(|&x| {
                    let extended = g_repr.elements[x as usize].extend(h_repr.degree);
                    h.elem_index(&extended).ok_or_else(|| {
                        Error::Usage("extended generator is missing from the ambient".into())
                    })
                })
                .collect::<Result<_>>()?;
            make_morphism_canonical(g, h, &images)
        }
        "diagonal" => {
            if h_name != format!("prod:{g_name},{g_name}") {
                return Err(Error::Usage(format!(
                    "diagonal embedding needs the ambient to be prod:{g_name},{g_name}"
                )));
            }
            let side = g.order();
            let images: Vec<u32> = g.gens().iter().map(|&x| x * side + x).collect();
            make_morphism_canonical(g, h, &images)
        }
        other => Err(Error::Usage(format!("unknown embedding {other:?}"))),
    }
}

/// Named Lie embeddings: `identity`, and `canonical` for sl2 inside gl2
/// over the same prime (e -> E12, h -> E11 - E22, f -> E21).
pub fn build_slie(
    s_name: &str,
    g_name: &str,
    embed: &str,
) -> Result<SLie<PrimeField>> {
    let s = build_lie(s_name)?;
    let g = build_lie(g_name)?;
    match embed {
        "identity" => {
            if s_name != g_name {
                return Err(Error::Usage(format!(
                    "identity embedding needs matching names, got {s_name} and {g_name}"
                )));
            }
            Ok(SLie::identity_structure(&s))
        }
        "canonical" => {
            if !s_name.starts_with("lie:sl2@") || !g_name.starts_with("lie:gl2@") {
                return Err(Error::Usage(
                    "canonical embedding is sl2 into gl2 over the same prime".into(),
                ));
            }
            let sp = s_name.rsplit_once('@').map(|x| x.1);
            let gp = g_name.rsplit_once('@').map(|x| x.1);
            if sp != gp {
                return Err(Error::Usage("primes must match".into()));
            }
            let field = s.field().clone();
            let m1 = field.from_int(-1);
            let embedding = LinearMap::new(
                field,
                3,
                4,
                vec![vec![0, 1, 0, 0], vec![1, 0, 0, m1], vec![0, 0, 1, 0]],
            );
            SLie::new(s, g, embedding)
        }
        other => Err(Error::Usage(format!("unknown lie embedding {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn named_group_orders() {
        for (name, order) in [
            ("sym:3", 6),
            ("sym:1", 1),
            ("alt:5", 60),
            ("cyc:6", 6),
            ("dih:4", 8),
            ("q8", 8),
            ("prod:sym:5,cyc:2", 240),
            ("prod:cyc:2,cyc:2,cyc:2", 8),
        ] {
            assert_eq!(build_group(name, &caps()).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn q8_has_quaternion_shape() {
        let q = build_group("q8", &caps()).unwrap();
        assert_eq!(q.order(), 8);
        assert!(!q.is_abelian());
        assert_eq!(q.center().len(), 2);
        // Exactly one element of order 2.
        let installed: Vec<u32> = (1..8).filter(|&x| q.element_order(x) == 2).collect();
        assert_eq!(installed.len(), 1);
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(build_group("spor:1", &caps()).is_err());
        assert!(build_group("sym:x", &caps()).is_err());
        assert!(build_group("prod:sym:3", &caps()).is_err());
        assert!(build_lie("lie:e8@5").is_err());
        assert!(build_lie("lie:sl2@4").is_err());
    }

    #[test]
    fn named_lie_dims() {
        assert_eq!(build_lie("lie:sl2@5").unwrap().dim(), 3);
        assert_eq!(build_lie("lie:gl2@5").unwrap().dim(), 4);
        assert_eq!(build_lie("lie:heis@3").unwrap().dim(), 3);
        assert_eq!(build_lie("lie:abelian:3@3").unwrap().dim(), 3);
    }

    #[test]
    fn embeddings_build() {
        let x = build_ggroup("sym:5", "prod:sym:5,cyc:2", "first-factor", &caps()).unwrap();
        assert_eq!(x.image().order(), 120);
        let y = build_ggroup("sym:4", "sym:5", "fix-last", &caps()).unwrap();
        assert_eq!(y.image().order(), 24);
        let d = build_ggroup("alt:5", "prod:alt:5,alt:5", "diagonal", &caps()).unwrap();
        assert_eq!(d.image().order(), 60);
        let i = build_ggroup("sym:3", "sym:3", "identity", &caps()).unwrap();
        assert!(i.embedding().is_bijective());
    }

    #[test]
    fn embedding_mismatches_are_rejected() {
        assert!(build_ggroup("sym:3", "sym:4", "identity", &caps()).is_err());
        assert!(build_ggroup("sym:3", "prod:cyc:2,sym:3", "first-factor", &caps()).is_err());
        assert!(build_ggroup("sym:3", "prod:sym:3,sym:4", "diagonal", &caps()).is_err());
    }

    #[test]
    fn canonical_lie_embedding_builds() {
        let x = build_slie("lie:sl2@5", "lie:gl2@5", "canonical").unwrap();
        assert_eq!(x.image().dim(), 3);
        assert!(build_slie("lie:sl2@5", "lie:gl2@3", "canonical").is_err());
    }
}
