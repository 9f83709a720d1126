//! Turns a validated problem into typed ring, modules, maps and complexes.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use gradhom::dcat::{cone, direct_sum, shift, ChainMap, Complex, Window};
use gradhom::groebner::{QuotientRing, Ring};
use gradhom::invariants::Object;
use gradhom::modops::{
    canonical_module, hom_modules, syzygy, tensor_modules, ModuleMap, ModulePresentation,
};
use gradhom::{Error, Field, GradedMatrix, PolyRing, TermOrder, Vector};

use crate::ops::ParamKind;
use crate::problem::{ComplexSpec, MapSpec, ModuleSpec, ProblemError, ProblemFile};

#[derive(Clone, Debug)]
pub enum Entity<K: Field> {
    Module(ModulePresentation<K>),
    Complex(Complex<K>),
    Map(ChainMap<K>),
}

impl<K: Field> Entity<K> {
    fn kind(&self) -> &'static str {
        match self {
            Entity::Module(_) => "module",
            Entity::Complex(_) => "complex",
            Entity::Map(_) => "map",
        }
    }
}

/// Everything a task can refer to.
pub struct Env<K: Field> {
    pub ring: Ring<K>,
    entities: HashMap<String, Entity<K>>,
    omega: OnceLock<Result<ModulePresentation<K>, String>>,
}

impl<K: Field> Env<K> {
    fn builtin(&self, name: &str) -> Option<Result<ModulePresentation<K>, String>> {
        match name {
            "R" => Some(Ok(ModulePresentation::ring_module(self.ring.clone()))),
            "k" => Some(Ok(ModulePresentation::residue_field(self.ring.clone()))),
            "omega" => Some(
                self.omega
                    .get_or_init(|| canonical_module(&self.ring).map_err(|e| e.to_string()))
                    .clone(),
            ),
            _ => None,
        }
    }

    fn entity(&self, name: &str) -> Option<Result<Entity<K>, String>> {
        if let Some(e) = self.entities.get(name) {
            return Some(Ok(e.clone()));
        }
        self.builtin(name).map(|r| r.map(Entity::Module))
    }

    pub fn module(&self, name: &str) -> Result<ModulePresentation<K>, String> {
        match self.entity(name) {
            Some(Ok(Entity::Module(m))) => Ok(m),
            Some(Ok(e)) => Err(format!("{name:?} is a {}, not a module", e.kind())),
            Some(Err(e)) => Err(e),
            None => Err(format!("undefined name {name:?}")),
        }
    }

    pub fn object(&self, name: &str) -> Result<Object<K>, String> {
        match self.entity(name) {
            Some(Ok(Entity::Module(m))) => Ok(Object::Module(m)),
            Some(Ok(Entity::Complex(c))) => Ok(Object::Complex(c)),
            Some(Ok(e)) => Err(format!("{name:?} is a {}, not a module or complex", e.kind())),
            Some(Err(e)) => Err(e),
            None => Err(format!("undefined name {name:?}")),
        }
    }
}

fn is_defined(pf: &ProblemFile, name: &str) -> bool {
    pf.raw.modules.contains_key(name) || pf.raw.maps.contains_key(name) || pf.raw.complexes.contains_key(name)
}

/// Undefined-name error, or a forward-reference error when the name is
/// declared later.
fn missing(pf: &ProblemFile, name: &str, path: &str) -> ProblemError {
    if is_defined(pf, name) {
        ProblemError::invalid(path, format!("{name:?} is used before its definition"))
    } else {
        ProblemError::undefined(name, path)
    }
}

struct Builder<'a, K: Field> {
    pf: &'a ProblemFile,
    env: Env<K>,
}

impl<K: Field> Builder<'_, K> {
    fn poly(&self, s: &str, path: &str) -> Result<Vector<K>, ProblemError> {
        self.env
            .ring
            .poly
            .parse(s)
            .map_err(|e| ProblemError::invalid(path, format!("in {s:?}: {e}")))
    }

    fn module(&self, name: &str, path: &str) -> Result<ModulePresentation<K>, ProblemError> {
        match self.env.entity(name) {
            None => Err(missing(self.pf, name, path)),
            Some(Err(e)) => Err(ProblemError::invalid(path, e)),
            Some(Ok(Entity::Module(m))) => Ok(m),
            Some(Ok(e)) => Err(ProblemError::invalid(path, format!("{name:?} is a {}, not a module", e.kind()))),
        }
    }

    fn complex(&self, name: &str, path: &str) -> Result<Complex<K>, ProblemError> {
        match self.env.entity(name) {
            None => Err(missing(self.pf, name, path)),
            Some(Err(e)) => Err(ProblemError::invalid(path, e)),
            Some(Ok(Entity::Module(m))) => Ok(Complex::from_presentation(&m)),
            Some(Ok(Entity::Complex(c))) => Ok(c),
            Some(Ok(Entity::Map(_))) => Err(ProblemError::invalid(path, format!("{name:?} is a map"))),
        }
    }

    /// Sum of `entries[i]` placed in component i.
    fn column(&self, entries: &[String], rank: usize, path: &str) -> Result<Vector<K>, ProblemError> {
        if entries.len() != rank {
            return Err(ProblemError::invalid(
                path,
                format!("expected {rank} entries, found {}", entries.len()),
            ));
        }
        let poly = &self.env.ring.poly;
        let mut terms = Vec::new();
        for (i, s) in entries.iter().enumerate() {
            let v = self.poly(s, &format!("{path}[{i}]"))?;
            terms.extend(poly.offset(&v, i as u32).terms);
        }
        Ok(poly.normalize(terms))
    }

    fn build_module(&self, name: &str, spec: &ModuleSpec) -> Result<ModulePresentation<K>, ProblemError> {
        let path = format!("modules.{name}");
        let ring = self.env.ring.clone();
        let lift = |e: Error| match e {
            Error::NotHomogeneous(d) => ProblemError::Inhomogeneous {
                path: path.clone(),
                detail: d,
                location: None,
            },
            other => ProblemError::invalid(&path, other),
        };
        Ok(match spec {
            ModuleSpec::Ring => ModulePresentation::ring_module(ring),
            ModuleSpec::ResidueField => ModulePresentation::residue_field(ring),
            ModuleSpec::Canonical => canonical_module(&ring).map_err(lift)?,
            ModuleSpec::Free(t) => ModulePresentation::free(ring, t.clone()),
            ModuleSpec::Cyclic(gens) => {
                let vs = gens
                    .iter()
                    .enumerate()
                    .map(|(i, s)| self.poly(s, &format!("{path}.cyclic[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                for (i, v) in vs.iter().enumerate() {
                    if !v.is_homogeneous(&[0]) {
                        return Err(ProblemError::Inhomogeneous {
                            path: format!("{path}.cyclic[{i}]"),
                            detail: format!("generator {}: {}", i + 1, gens[i]),
                            location: None,
                        });
                    }
                }
                ModulePresentation::cyclic(ring, &vs).map_err(lift)?
            }
            ModuleSpec::Presentation { gens, relations } => {
                let cols = relations
                    .iter()
                    .enumerate()
                    .map(|(j, c)| self.column(c, gens.len(), &format!("{path}.relations[{j}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let twists = gradhom::GradedFree::new(gens.clone());
                for (j, c) in cols.iter().enumerate() {
                    if !c.is_homogeneous(&twists.twists) {
                        return Err(ProblemError::Inhomogeneous {
                            path: format!("{path}.relations[{j}]"),
                            detail: format!("relation column {}: {}", j + 1, relations[j].join(", ")),
                            location: None,
                        });
                    }
                }
                ModulePresentation::new(ring, twists, cols).map_err(lift)?
            }
            ModuleSpec::Syzygy { of, index } => syzygy(&self.module(of, &format!("{path}.syzygy.of"))?, *index),
            ModuleSpec::Twist { of, by } => self.module(of, &format!("{path}.twist.of"))?.shift(*by),
            ModuleSpec::Sum(parts) => {
                let mut it = parts.iter().enumerate();
                let Some((_, first)) = it.next() else {
                    return Err(ProblemError::invalid(&path, "empty sum"));
                };
                let mut m = self.module(first, &format!("{path}.sum[0]"))?;
                for (i, p) in it {
                    m = m.direct_sum(&self.module(p, &format!("{path}.sum[{i}]"))?);
                }
                m
            }
            ModuleSpec::Hom(a, b) => {
                let (m, n) = (self.module(a, &format!("{path}.hom[0]"))?, self.module(b, &format!("{path}.hom[1]"))?);
                hom_modules(&m, &n).module
            }
            ModuleSpec::Tensor(a, b) => {
                let (m, n) = (
                    self.module(a, &format!("{path}.tensor[0]"))?,
                    self.module(b, &format!("{path}.tensor[1]"))?,
                );
                tensor_modules(&m, &n)
            }
        })
    }

    fn build_map(&self, name: &str, spec: &MapSpec) -> Result<ChainMap<K>, ProblemError> {
        let path = format!("maps.{name}");
        let as_chain = |f: ModuleMap<K>| ChainMap {
            source: Complex::from_presentation(&f.source),
            target: Complex::from_presentation(&f.target),
            comps: vec![f.matrix],
            window: Window::full(),
        };
        let invalid = |e: Error| match e {
            Error::NotHomogeneous(d) => ProblemError::Inhomogeneous {
                path: path.clone(),
                detail: d,
                location: None,
            },
            other => ProblemError::invalid(&path, other),
        };
        match spec {
            MapSpec::Matrix { source, target, columns } => {
                let s = self.module(source, &format!("{path}.matrix.source"))?;
                let t = self.module(target, &format!("{path}.matrix.target"))?;
                if columns.len() != s.ngens() {
                    return Err(ProblemError::invalid(
                        format!("{path}.matrix.columns"),
                        format!("source has {} generators, found {} columns", s.ngens(), columns.len()),
                    ));
                }
                let cols = columns
                    .iter()
                    .enumerate()
                    .map(|(j, c)| self.column(c, t.ngens(), &format!("{path}.matrix.columns[{j}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let mat = GradedMatrix::new(s.gens.clone(), t.gens.clone(), cols).map_err(invalid)?;
                Ok(as_chain(ModuleMap::new(s, t, mat).map_err(invalid)?))
            }
            MapSpec::Multiply { on, by } => {
                let m = self.module(on, &format!("{path}.multiply.on"))?;
                let f = self.poly(by, &format!("{path}.multiply.by"))?;
                if f.is_zero() || !f.is_homogeneous(&[0]) {
                    return Err(ProblemError::Inhomogeneous {
                        path: format!("{path}.multiply.by"),
                        detail: format!("multiplier: {by}"),
                        location: None,
                    });
                }
                let d = f.terms[0].mono.deg() as i64;
                let src = m.shift(d);
                let poly = &self.env.ring.poly;
                let cols = (0..m.ngens()).map(|i| poly.offset(&f, i as u32)).collect();
                let mat = GradedMatrix::new(src.gens.clone(), m.gens.clone(), cols).map_err(invalid)?;
                Ok(as_chain(ModuleMap::new(src, m, mat).map_err(invalid)?))
            }
            MapSpec::Identity(x) => Ok(ChainMap::identity(&self.complex(x, &format!("{path}.identity"))?)),
        }
    }

    fn build_complex(&self, name: &str, spec: &ComplexSpec) -> Result<Complex<K>, ProblemError> {
        let path = format!("complexes.{name}");
        Ok(match spec {
            ComplexSpec::Module(m) => Complex::from_presentation(&self.module(m, &format!("{path}.module"))?),
            ComplexSpec::Shift { of, by } => shift(&self.complex(of, &format!("{path}.shift.of"))?, *by),
            ComplexSpec::Sum(parts) => {
                let mut it = parts.iter().enumerate();
                let Some((_, first)) = it.next() else {
                    return Err(ProblemError::invalid(&path, "empty sum"));
                };
                let mut c = self.complex(first, &format!("{path}.sum[0]"))?;
                for (i, p) in it {
                    c = direct_sum(&c, &self.complex(p, &format!("{path}.sum[{i}]"))?);
                }
                c
            }
            ComplexSpec::Cone(f) => {
                let p = format!("{path}.cone");
                match self.env.entities.get(f.as_str()) {
                    Some(Entity::Map(m)) => cone(m),
                    Some(e) => return Err(ProblemError::invalid(p, format!("{f:?} is a {}, not a map", e.kind()))),
                    None => return Err(missing(self.pf, f, &p)),
                }
            }
        })
    }
}

fn build_ring<K: Field>(field: K, pf: &ProblemFile) -> Result<Ring<K>, ProblemError> {
    let spec = &pf.raw.ring;
    let weights = spec.weights();
    if weights.len() != spec.vars.len() {
        return Err(ProblemError::invalid(
            "ring.weights",
            format!("{} weights for {} variables", weights.len(), spec.vars.len()),
        ));
    }
    let poly = Arc::new(
        PolyRing::new(field, spec.vars.clone(), weights, TermOrder::default())
            .map_err(|e| ProblemError::invalid("ring", e))?,
    );
    let mut rels = Vec::new();
    for (i, s) in spec.relations.iter().enumerate() {
        let path = format!("ring.relations[{i}]");
        let v = poly
            .parse(s)
            .map_err(|e| ProblemError::invalid(&path, format!("in {s:?}: {e}")))?;
        if !v.is_homogeneous(&[0]) {
            return Err(ProblemError::Inhomogeneous {
                path,
                detail: format!("relation {}: {s}", i + 1),
                location: None,
            });
        }
        rels.push(v);
    }
    QuotientRing::new(poly, rels).map_err(|e| ProblemError::invalid("ring", e))
}

/// Builds every declaration in file order (modules, then maps, then
/// complexes) and checks that task arguments name objects of the right
/// kind.
pub fn build_env<K: Field>(field: K, pf: &ProblemFile) -> Result<Env<K>, ProblemError> {
    let ring = build_ring(field, pf)?;
    let mut b = Builder {
        pf,
        env: Env {
            ring,
            entities: HashMap::new(),
            omega: OnceLock::new(),
        },
    };
    for (name, spec) in &pf.raw.modules {
        let m = b.build_module(name, spec)?;
        b.env.entities.insert(name.clone(), Entity::Module(m));
    }
    for (name, spec) in &pf.raw.maps {
        let f = b.build_map(name, spec)?;
        b.env.entities.insert(name.clone(), Entity::Map(f));
    }
    for (name, spec) in &pf.raw.complexes {
        let c = b.build_complex(name, spec)?;
        b.env.entities.insert(name.clone(), Entity::Complex(c));
    }
    for t in &pf.tasks {
        for (p, kind, _) in t.op.params() {
            let Some(name) = t.name_arg(p) else { continue };
            let path = format!("tasks[{}].args.{p}", t.index);
            match kind {
                ParamKind::Module => {
                    b.module(name, &path)?;
                }
                ParamKind::Object => {
                    if b.env.entity(name).is_none() {
                        return Err(missing(pf, name, &path));
                    }
                    b.env.object(name).map_err(|e| ProblemError::invalid(&path, e))?;
                }
                _ => {}
            }
        }
    }
    Ok(b.env)
}
