//! Signed Gauss codes for virtual link diagrams.
//!
//! A diagram is an ordered list of components; each component is a cyclic
//! word of passages read off by traversing the component. The text form
//! is
//!
//! ```text
//! link      := component ("/" component)*
//! component := "*" | passage+
//! passage   := ("O" | "U") INT ("+" | "-")
//! ```
//!
//! with single spaces between tokens, `*` for a component with no
//! passages, and decimal labels `>= 1`. Every crossing label must occur
//! exactly twice, once as `O` and once as `U`, with equal signs. Files
//! hold one link per line; blank lines and lines starting with `#` are
//! skipped.
//!
//! Labels are preserved by all operations; [`LinkDiagram::serialize`]
//! renumbers them `1..n` in order of first appearance, so serializing
//! then parsing yields the diagram's normal form.

use std::collections::HashMap;
use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Whether a passage goes over or under the other strand at its crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Over,
    Under,
}

/// One passage through a crossing: role, crossing label, crossing sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Passage {
    pub role: Role,
    pub label: u32,
    pub sign: i8,
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = match self.role {
            Role::Over => 'O',
            Role::Under => 'U',
        };
        let sign = if self.sign >= 0 { '+' } else { '-' };
        write!(f, "{role}{}{sign}", self.label)
    }
}

/// Insertion order of the two passages added by a kink.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairOrder {
    OverUnder,
    UnderOver,
}

/// A virtual link diagram as a signed Gauss code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    components: Vec<Vec<Passage>>,
}

impl LinkDiagram {
    /// Builds a diagram from raw components, checking the pairing rules:
    /// every label occurs exactly twice, once `O` and once `U`, with
    /// equal signs.
    pub fn new(components: Vec<Vec<Passage>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Validation("a link needs at least one component".into()));
        }
        for comp in &components {
            for p in comp {
                if p.sign != 1 && p.sign != -1 {
                    return Err(Error::Validation(format!(
                        "crossing {} has sign {}, expected +1 or -1",
                        p.label, p.sign
                    )));
                }
                if p.label == 0 {
                    return Err(Error::Validation("crossing labels start at 1".into()));
                }
            }
        }
        let d = LinkDiagram { components };
        d.validate_pairing()?;
        Ok(d)
    }

    fn validate_pairing(&self) -> Result<()> {
        let mut seen: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (c, comp) in self.components.iter().enumerate() {
            for (p, pass) in comp.iter().enumerate() {
                seen.entry(pass.label).or_default().push((c, p));
            }
        }
        let mut labels: Vec<u32> = seen.keys().copied().collect();
        labels.sort_unstable();
        for label in labels {
            let occ = &seen[&label];
            let place = |&(c, p): &(usize, usize)| format!("component {} position {}", c + 1, p);
            if occ.len() != 2 {
                let places: Vec<String> = occ.iter().map(place).collect();
                return Err(Error::Validation(format!(
                    "crossing {label} appears {} time(s) (expected 2) at {}",
                    occ.len(),
                    places.join(", ")
                )));
            }
            let a = self.components[occ[0].0][occ[0].1];
            let b = self.components[occ[1].0][occ[1].1];
            if a.role == b.role {
                return Err(Error::Validation(format!(
                    "crossing {label} has two {:?} passages at {} and {}",
                    a.role,
                    place(&occ[0]),
                    place(&occ[1])
                )));
            }
            if a.sign != b.sign {
                return Err(Error::Validation(format!(
                    "crossing {label} has mismatched signs at {} and {}",
                    place(&occ[0]),
                    place(&occ[1])
                )));
            }
        }
        Ok(())
    }

    /// Parses a single link.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = lex(text)?;
        let mut components: Vec<Vec<Passage>> = Vec::new();
        let mut current: Vec<Passage> = Vec::new();
        let mut star_at: Option<usize> = None;
        let mut last_pos = 0usize;
        let mut boundary = true; // at start or right after '/'
        for (pos, tok) in tokens {
            last_pos = pos;
            match tok {
                Token::Slash => {
                    if boundary {
                        return Err(Error::Syntax {
                            pos,
                            msg: "empty component".into(),
                        });
                    }
                    components.push(std::mem::take(&mut current));
                    star_at = None;
                    boundary = true;
                }
                Token::Star => {
                    if !boundary {
                        return Err(Error::Syntax {
                            pos,
                            msg: "'*' must be the whole component".into(),
                        });
                    }
                    star_at = Some(pos);
                    boundary = false;
                }
                Token::Passage(p) => {
                    if let Some(star) = star_at {
                        return Err(Error::Syntax {
                            pos,
                            msg: format!("passage after '*' at byte {star}"),
                        });
                    }
                    current.push(p);
                    boundary = false;
                }
            }
        }
        if boundary {
            return Err(Error::Syntax {
                pos: last_pos,
                msg: "empty component".into(),
            });
        }
        components.push(current);
        LinkDiagram::new(components)
    }

    /// Parses a file: one link per line, `#` comment lines and blank
    /// lines skipped. Errors are prefixed with the 1-based line number.
    pub fn parse_links(text: &str) -> Result<Vec<Self>> {
        let mut links = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            match LinkDiagram::parse(t) {
                Ok(d) => links.push(d),
                Err(Error::Syntax { pos, msg }) => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("line {}: {msg}", i + 1),
                    })
                }
                Err(Error::Validation(msg)) => {
                    return Err(Error::Validation(format!("line {}: {msg}", i + 1)))
                }
                Err(e) => return Err(e),
            }
        }
        Ok(links)
    }

    /// Number of components.
    pub fn mu(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    /// Total number of passages over all components.
    pub fn passage_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    /// Number of crossings (half the passage count).
    pub fn crossing_count(&self) -> usize {
        self.passage_count() / 2
    }

    fn max_label(&self) -> u32 {
        self.components
            .iter()
            .flatten()
            .map(|p| p.label)
            .max()
            .unwrap_or(0)
    }

    /// The same diagram with labels renumbered `1..n` in order of first
    /// appearance.
    pub fn normalized(&self) -> LinkDiagram {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let mut next = 1u32;
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|p| {
                        let label = *map.entry(p.label).or_insert_with(|| {
                            let l = next;
                            next += 1;
                            l
                        });
                        Passage { label, ..*p }
                    })
                    .collect()
            })
            .collect();
        LinkDiagram { components }
    }

    /// Canonical text form: normalized labels, components joined by
    /// `" / "`, empty components rendered `*`.
    pub fn serialize(&self) -> String {
        let norm = self.normalized();
        let parts: Vec<String> = norm
            .components
            .iter()
            .map(|comp| {
                if comp.is_empty() {
                    "*".to_string()
                } else {
                    comp.iter()
                        .map(Passage::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        parts.join(" / ")
    }

    fn check_site(&self, component: usize, position: usize) -> Result<usize> {
        if component == 0 || component > self.mu() {
            return Err(Error::OutOfRange(format!(
                "component {component} (diagram has {} components)",
                self.mu()
            )));
        }
        let len = self.components[component - 1].len();
        if position > len {
            return Err(Error::OutOfRange(format!(
                "position {position} in component {component} (length {len})"
            )));
        }
        Ok(component - 1)
    }

    /// Inserts a kink: a fresh crossing whose two passages sit adjacent
    /// on one component. `component` is 1-based; `position` counts in
    /// `0..=len` and the pair is inserted before the passage currently at
    /// that position.
    pub fn r1_insert(
        &self,
        component: usize,
        position: usize,
        sign: i8,
        order: PairOrder,
    ) -> Result<LinkDiagram> {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        let c = self.check_site(component, position)?;
        let label = self.max_label() + 1;
        let over = Passage { role: Role::Over, label, sign };
        let under = Passage { role: Role::Under, label, sign };
        let pair = match order {
            PairOrder::OverUnder => [over, under],
            PairOrder::UnderOver => [under, over],
        };
        let mut components = self.components.clone();
        components[c].splice(position..position, pair);
        Ok(LinkDiagram { components })
    }

    /// Inserts a cancelling clasp: two fresh crossings with signs
    /// `(sign, -sign)`. Site 1 receives the two `O` passages, site 2 the
    /// two `U` passages in reverse label order. Sites are `(component,
    /// position)` with 1-based components; on a shared component the two
    /// positions must differ, and the site with the larger position is
    /// shifted by the insertion at the smaller one.
    pub fn r2_insert(
        &self,
        site1: (usize, usize),
        site2: (usize, usize),
        sign: i8,
    ) -> Result<LinkDiagram> {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        let c1 = self.check_site(site1.0, site1.1)?;
        let c2 = self.check_site(site2.0, site2.1)?;
        if c1 == c2 && site1.1 == site2.1 {
            return Err(Error::Precondition(format!(
                "clasp sites on component {} must have distinct positions",
                site1.0
            )));
        }
        let a = self.max_label() + 1;
        let b = a + 1;
        let overs = [
            Passage { role: Role::Over, label: a, sign },
            Passage { role: Role::Over, label: b, sign: -sign },
        ];
        let unders = [
            Passage { role: Role::Under, label: b, sign: -sign },
            Passage { role: Role::Under, label: a, sign },
        ];
        let mut components = self.components.clone();
        components[c1].splice(site1.1..site1.1, overs);
        let p2 = if c1 == c2 && site2.1 > site1.1 {
            site2.1 + 2
        } else {
            site2.1
        };
        components[c2].splice(p2..p2, unders);
        Ok(LinkDiagram { components })
    }

    /// Applies `steps` random kink/clasp insertions, deterministically in
    /// `seed`. Equal seeds and step counts give identical output.
    pub fn fuzz(&self, seed: u64, steps: usize) -> LinkDiagram {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |rng: &mut ChaCha8Rng, n: usize| (rng.next_u64() % n as u64) as usize;
        let mut d = self.clone();
        for _ in 0..steps {
            let mu = d.mu();
            let mut kink = pick(&mut rng, 2) == 0;
            if !kink && mu == 1 && d.components[0].is_empty() {
                // a lone empty component has one slot, too few for a clasp
                kink = true;
            }
            let sign = if pick(&mut rng, 2) == 0 { 1 } else { -1 };
            d = if kink {
                let c = pick(&mut rng, mu) + 1;
                let pos = pick(&mut rng, d.components[c - 1].len() + 1);
                let order = if pick(&mut rng, 2) == 0 {
                    PairOrder::OverUnder
                } else {
                    PairOrder::UnderOver
                };
                d.r1_insert(c, pos, sign, order)
            } else {
                let c1 = pick(&mut rng, mu) + 1;
                let len1 = d.components[c1 - 1].len();
                let p1 = pick(&mut rng, len1 + 1);
                let mut c2 = pick(&mut rng, mu) + 1;
                let p2 = if c2 == c1 && len1 == 0 {
                    c2 = c1 % mu + 1;
                    pick(&mut rng, d.components[c2 - 1].len() + 1)
                } else if c2 == c1 {
                    let i = pick(&mut rng, len1);
                    i + usize::from(i >= p1)
                } else {
                    pick(&mut rng, d.components[c2 - 1].len() + 1)
                };
                d.r2_insert((c1, p1), (c2, p2), sign)
            }
            .expect("generated move sites are valid");
        }
        d
    }

    /// Splits every component into arcs at its Under passages and
    /// resolves each crossing to the arcs meeting it.
    pub fn arc_table(&self) -> ArcTable {
        ArcTable::new(self)
    }
}

/// An arc of a diagram: maximal run of a component between consecutive
/// Under passages. `arc` is 0-based within the component; arc 0 starts
/// immediately after the component's first Under passage. A component
/// with no Under passage is a single closed arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArcRef {
    pub component: usize,
    pub arc: usize,
}

/// A crossing resolved to arcs: the arc passing over, the under-arc
/// ending here, and the under-arc starting here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingArcs {
    pub label: u32,
    pub sign: i8,
    pub over_component: usize,
    pub under_component: usize,
    pub over_arc: ArcRef,
    pub under_in: ArcRef,
    pub under_out: ArcRef,
}

/// One under-crossing met while walking a component from its arc 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub label: u32,
    /// 0-based component carrying the Over passage.
    pub over_component: usize,
    pub sign: i8,
}

/// Arcs and crossing incidences of a diagram. Components and arcs are
/// 0-based throughout.
#[derive(Clone, Debug)]
pub struct ArcTable {
    /// Number of arcs in each component (at least 1).
    pub arc_counts: Vec<usize>,
    /// Flat index of each component's arc 0; arcs are numbered
    /// component-major.
    pub arc_offsets: Vec<usize>,
    /// Crossings sorted by label.
    pub crossings: Vec<CrossingArcs>,
    /// Per component, the under-crossings met when traversing once
    /// around starting at arc 0.
    pub walks: Vec<Vec<WalkStep>>,
}

impl ArcTable {
    fn new(d: &LinkDiagram) -> ArcTable {
        // Under-passage positions per component, ascending.
        let unders: Vec<Vec<usize>> = d
            .components()
            .iter()
            .map(|comp| {
                comp.iter()
                    .enumerate()
                    .filter(|(_, p)| p.role == Role::Under)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let arc_counts: Vec<usize> = unders.iter().map(|u| u.len().max(1)).collect();
        let mut arc_offsets = Vec::with_capacity(arc_counts.len());
        let mut total = 0usize;
        for &n in &arc_counts {
            arc_offsets.push(total);
            total += n;
        }

        // Arc containing position `p` of component `c`: arc m covers the
        // positions after the m-th Under up to and including the next.
        let arc_of = |c: usize, p: usize| -> usize {
            let u = &unders[c];
            let k = u.len();
            if k == 0 {
                return 0;
            }
            if p <= u[0] || p > u[k - 1] {
                return k - 1;
            }
            // unique m with u[m] < p <= u[m+1]
            u.partition_point(|&x| x < p) - 1
        };

        let mut over_at: HashMap<u32, (usize, usize)> = HashMap::new();
        let mut under_at: HashMap<u32, (usize, usize)> = HashMap::new();
        let mut signs: HashMap<u32, i8> = HashMap::new();
        for (c, comp) in d.components().iter().enumerate() {
            for (p, pass) in comp.iter().enumerate() {
                match pass.role {
                    Role::Over => over_at.insert(pass.label, (c, p)),
                    Role::Under => under_at.insert(pass.label, (c, p)),
                };
                signs.insert(pass.label, pass.sign);
            }
        }

        let mut labels: Vec<u32> = signs.keys().copied().collect();
        labels.sort_unstable();
        let crossings: Vec<CrossingArcs> = labels
            .iter()
            .map(|&label| {
                let (oc, op) = over_at[&label];
                let (uc, up) = under_at[&label];
                let k = unders[uc].len();
                let under_in = ArcRef { component: uc, arc: arc_of(uc, up) };
                let under_out = ArcRef { component: uc, arc: (under_in.arc + 1) % k };
                CrossingArcs {
                    label,
                    sign: signs[&label],
                    over_component: oc,
                    under_component: uc,
                    over_arc: ArcRef { component: oc, arc: arc_of(oc, op) },
                    under_in,
                    under_out,
                }
            })
            .collect();

        let walks: Vec<Vec<WalkStep>> = d
            .components()
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                let u = &unders[c];
                let k = u.len();
                (0..k)
                    .map(|m| {
                        let pos = u[(m + 1) % k];
                        let label = comp[pos].label;
                        WalkStep {
                            label,
                            over_component: over_at[&label].0,
                            sign: signs[&label],
                        }
                    })
                    .collect()
            })
            .collect();

        ArcTable { arc_counts, arc_offsets, crossings, walks }
    }

    /// Total number of arcs.
    pub fn total_arcs(&self) -> usize {
        self.arc_counts.iter().sum()
    }

    /// Flat index of an arc.
    pub fn flat(&self, a: ArcRef) -> usize {
        self.arc_offsets[a.component] + a.arc
    }
}

enum Token {
    Slash,
    Star,
    Passage(Passage),
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            b'*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            b'O' | b'U' => {
                let start = i;
                let role = if b == b'O' { Role::Over } else { Role::Under };
                i += 1;
                let num_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == num_start {
                    return Err(Error::Syntax {
                        pos: i.min(bytes.len()),
                        msg: "expected crossing label".into(),
                    });
                }
                let label: u32 = text[num_start..i].parse().map_err(|_| Error::Syntax {
                    pos: num_start,
                    msg: "crossing label too large".into(),
                })?;
                if label == 0 {
                    return Err(Error::Syntax {
                        pos: num_start,
                        msg: "crossing labels start at 1".into(),
                    });
                }
                let sign = match bytes.get(i) {
                    Some(b'+') => 1,
                    Some(b'-') => -1,
                    _ => {
                        return Err(Error::Syntax {
                            pos: i.min(bytes.len()),
                            msg: format!("expected '+' or '-' after label {label}"),
                        })
                    }
                };
                i += 1;
                tokens.push((start, Token::Passage(Passage { role, label, sign })));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character {:?}", text[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(tokens)
}
