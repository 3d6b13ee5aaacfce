//! Regenerates `data/fixtures/*.json`.
//!
//! Leech fixtures are monomial isometries in the coordinates of the Golay
//! construction: permutations from M24 (on positions `0..22` and `∞ = 23`),
//! and one signed permutation. The E8³ fixture swaps two E8 blocks.
//!
//! Run with `cargo run -p orbifolder --example gen_fixtures`.

use std::fmt::Write as _;
use std::path::PathBuf;

use orbifolder::catalog::{self, NiemeierLattice};
use orbifolder::isometry::{Fixture, Isometry};
use orbifolder::{Int, IntMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: usize = 23;
const INF: usize = 23;

type Perm = Vec<usize>;

fn inv_mod(x: usize) -> usize {
    (1..P).find(|y| x * y % P == 1).expect("unit mod 23")
}

fn is_residue(x: usize) -> bool {
    (1..P).any(|y| y * y % P == x)
}

fn generator(letter: char) -> Perm {
    let mut p: Perm = (0..24).collect();
    for x in 0..P {
        p[x] = match letter {
            'a' => (x + 1) % P,
            'b' => 2 * x % P,
            'g' if x == 0 => INF,
            'g' => (P - inv_mod(x)) % P,
            'd' if x == 0 => 0,
            'd' => {
                let c = x * x % P * x % P;
                if is_residue(x) {
                    9 * c % P
                } else {
                    c * inv_mod(9) % P
                }
            }
            _ => panic!("unknown generator {letter}"),
        };
    }
    if letter == 'a' || letter == 'b' || letter == 'd' {
        p[INF] = INF;
    } else {
        p[INF] = 0;
    }
    p
}

// Letters apply left to right.
fn word(w: &str) -> Perm {
    let mut p: Perm = (0..24).collect();
    for c in w.chars() {
        let g = generator(c);
        p = p.iter().map(|&i| g[i]).collect();
    }
    p
}

fn golay_code() -> Vec<u32> {
    let gens: Vec<u32> = catalog::golay_generators()
        .expect("golay generators")
        .iter()
        .map(|w| w.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | ((b as u32) << i)))
        .collect();
    let mut code = vec![0u32];
    for g in gens {
        if !code.contains(&g) {
            let more: Vec<u32> = code.iter().map(|c| c ^ g).collect();
            code.extend(more);
        }
    }
    code.sort();
    code
}

fn permute_word(p: &Perm, w: u32) -> u32 {
    (0..24).filter(|&i| w >> i & 1 == 1).fold(0, |acc, i| acc | 1 << p[i])
}

fn signed_matrix(p: &Perm, signs: u32) -> IntMatrix {
    let mut m = IntMatrix::zeros(24, 24);
    for i in 0..24 {
        let s = if signs >> p[i] & 1 == 1 { -1 } else { 1 };
        m[(p[i], i)] = Int::from(s);
    }
    m
}

fn sign_change(c: u32) -> IntMatrix {
    signed_matrix(&(0..24).collect(), c)
}

// An F2 basis of the codewords fixed by `p`.
fn invariant_basis(code: &[u32], p: &Perm) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for &c in code {
        if c == 0 || permute_word(p, c) != c {
            continue;
        }
        let mut r = c;
        for &b in &basis {
            r = r.min(r ^ b);
        }
        if r != 0 {
            basis.push(r);
            basis.sort_by(|a, b| b.cmp(a));
        }
    }
    basis.sort();
    basis
}

// Permutations in M24 commuting with `p` and preserving `signs`, found by a
// seeded random walk on the generators; powers of `p` are skipped.
fn centralizer_sample(p: &Perm, signs: u32, want: usize, steps: usize) -> Vec<Perm> {
    let gens: Vec<Perm> = "abgd".chars().map(generator).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x00c0_ffee);
    let mut powers = vec![(0..24).collect::<Perm>()];
    loop {
        let next: Perm = powers.last().unwrap().iter().map(|&i| p[i]).collect();
        if next == powers[0] {
            break;
        }
        powers.push(next);
    }
    let mut x: Perm = (0..24).collect();
    let mut found: Vec<Perm> = Vec::new();
    for _ in 0..steps {
        let g = &gens[rng.random_range(0..gens.len())];
        x = x.iter().map(|&i| g[i]).collect();
        let commutes = (0..24).all(|i| x[p[i]] == p[x[i]]);
        if commutes && permute_word(&x, signs) == signs && !powers.contains(&x) && !found.contains(&x) {
            found.push(x.clone());
            if found.len() == want {
                break;
            }
        }
    }
    found
}

struct Out {
    name: String,
    lattice: String,
    matrix: IntMatrix,
    family: char,
    description: String,
    generators: Vec<IntMatrix>,
}

fn write_matrix(s: &mut String, m: &IntMatrix, indent: &str) {
    s.push_str("[\n");
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        let _ = write!(s, "{indent}  [{}]", row.join(","));
        s.push_str(if r + 1 < m.rows() { ",\n" } else { "\n" });
    }
    let _ = write!(s, "{indent}]");
}

fn render(o: &Out, shape: &str) -> String {
    let mut s = String::from("{\n");
    let _ = writeln!(s, "  \"name\": \"{}\",", o.name);
    let _ = writeln!(s, "  \"lattice\": \"{}\",", o.lattice);
    let _ = writeln!(s, "  \"claimed_frame_shape\": \"{shape}\",");
    let _ = writeln!(s, "  \"family\": \"{}\",", o.family);
    let _ = writeln!(s, "  \"column\": \"{}\",", o.lattice);
    let _ = writeln!(s, "  \"description\": \"{}\",", o.description);
    s.push_str("  \"matrix\": ");
    write_matrix(&mut s, &o.matrix, "  ");
    s.push_str(",\n  \"dedup_generators\": [");
    for (i, g) in o.generators.iter().enumerate() {
        s.push_str(if i == 0 { "\n    " } else { ",\n    " });
        write_matrix(&mut s, g, "    ");
    }
    s.push_str(if o.generators.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    s
}

fn leech_fixture(n: &NiemeierLattice, code: &[u32], family: char, w: &str, signs: u32) -> Out {
    let p = word(w);
    for &c in code {
        assert!(code.binary_search(&permute_word(&p, c)).is_ok(), "word {w} does not preserve the Golay code");
    }
    let matrix = n.isometry_from_frame(&signed_matrix(&p, signs)).expect("Leech isometry");
    let mut generators: Vec<IntMatrix> = invariant_basis(code, &p)
        .into_iter()
        .map(|c| n.isometry_from_frame(&sign_change(c)).expect("sign change"))
        .collect();
    for c in centralizer_sample(&p, signs, 6, 40_000_000) {
        generators.push(n.isometry_from_frame(&signed_matrix(&c, 0)).expect("centralising permutation"));
    }
    let description = if signs == 0 {
        format!("M24 permutation {w}")
    } else {
        let set: Vec<String> = (0..24).filter(|i| signs >> i & 1 == 1).map(|i| i.to_string()).collect();
        format!("M24 permutation {w} followed by sign changes on {{{}}}", set.join(","))
    };
    Out { name: format!("leech_{}", family.to_ascii_lowercase()), lattice: "A24".into(), matrix, family, description, generators }
}

fn e8_cubed() -> Out {
    let n = catalog::niemeier("A3").expect("E8^3");
    let e8 = catalog::RootComponent::parse("E8").unwrap().cartan();
    let mut swap = IntMatrix::zeros(24, 24);
    for i in 0..8 {
        swap[(i + 8, i)] = Int::from(1);
        swap[(i, i + 8)] = Int::from(1);
        swap[(i + 16, i + 16)] = Int::from(1);
    }
    let reflection = |blocks: &[usize], i: usize| {
        let mut m = IntMatrix::identity(24);
        for &b in blocks {
            for j in 0..8 {
                let v = &m[(8 * b + i, 8 * b + j)] - &e8[(i, j)];
                m[(8 * b + i, 8 * b + j)] = v;
            }
        }
        n.isometry_from_frame(&m).expect("Weyl reflection")
    };
    let mut generators: Vec<IntMatrix> = (0..8).map(|i| reflection(&[0, 1], i)).collect();
    generators.extend((0..8).map(|i| reflection(&[2], i)));
    Out {
        name: "e8x3_swap".into(),
        lattice: "A3".into(),
        matrix: n.isometry_from_frame(&swap).expect("block swap"),
        family: 'B',
        description: "exchange of the first two E8 components".into(),
        generators,
    }
}

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join("fixtures");
    std::fs::create_dir_all(&dir).expect("fixture directory");
    let code = golay_code();
    assert_eq!(code.len(), 4096);
    let leech = catalog::niemeier("A24").expect("Leech lattice");
    let signed = code
        .iter()
        .copied()
        .find(|&c| c == [0, 3, 12, 14, 15, 16, 17, 23].iter().fold(0, |a, i| a | 1 << i))
        .expect("codeword for the signed fixture");
    let mut outs = vec![e8_cubed()];
    for (family, w, signs) in [
        ('B', "ababddadd", 0),
        ('C', "aaadddad", 0),
        ('D', "g", 0),
        ('E', "adbdb", 0),
        ('F', "d", 0),
        ('G', "abdb", 0),
        ('H', "aadd", 0),
        ('I', "abd", 0),
        ('J', "aaadddad", signed),
        ('K', "gd", 0),
    ] {
        outs.push(leech_fixture(&leech, &code, family, w, signs));
    }
    for o in outs {
        let iso = Isometry::new(catalog::niemeier(&o.lattice).unwrap().lattice.clone(), o.matrix.clone()).expect("isometry");
        let shape = iso.frame_shape().to_string();
        let class = catalog::frame_class(o.family).expect("frame class");
        assert_eq!(shape, class.frame_shape.to_string(), "{}: wrong Frame shape", o.name);
        let text = render(&o, &shape);
        let spec = catalog::FixtureSpec::from_json(&o.name, &text).expect("round trip");
        Fixture::from_spec(spec).expect("fixture validates");
        std::fs::write(dir.join(format!("{}.json", o.name)), text).expect("write fixture");
        println!("{}: {} ({} dedup generators)", o.name, shape, o.generators.len());
    }
}
