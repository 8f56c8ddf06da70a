#include "toricfs/klyachko.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace toricfs {

RayFiltration::RayFiltration(const Fq& f, int rank, std::vector<std::pair<int64_t, Subspace>> steps)
    : f_(&f), rank_(rank), steps_(std::move(steps)) {
    if (steps_.empty()) throw ToricError("filtration needs at least one jump");
    for (auto& [i, v] : steps_) {
        if (&v.field() != &f) throw ToricError("filtration field mismatch");
        if (v.ambient() != rank) throw ToricError("filtration ambient mismatch");
    }
    for (size_t k = 0; k + 1 < steps_.size(); ++k)
        if (steps_[k].first >= steps_[k + 1].first) throw ToricError("filtration jumps must increase");
    if (steps_.front().second.dim() != rank)
        throw ToricError("filtration must be the full space at its lowest jump");
    for (size_t k = 0; k + 1 < steps_.size(); ++k) {
        if (!(steps_[k].second.contains(steps_[k + 1].second)) ||
            steps_[k + 1].second.dim() >= steps_[k].second.dim())
            throw ToricError("filtration subspaces must strictly decrease");
    }
    if (steps_.back().second.dim() == 0) throw ToricError("zero subspace is implicit above the top jump");
}

RayFiltration RayFiltration::single_jump(const Fq& f, int rank, int64_t i) {
    return RayFiltration(f, rank, {{i, Subspace::full(f, rank)}});
}

Subspace RayFiltration::at(int64_t i) const {
    // value = subspace at the smallest recorded jump >= i; zero above the top
    for (auto& [j, v] : steps_)
        if (j >= i) return v;
    return Subspace::zero(*f_, rank_);
}

std::vector<int64_t> RayFiltration::jumps() const {
    std::vector<int64_t> r;
    for (auto& [i, v] : steps_) r.push_back(i);
    return r;
}

RayFiltration RayFiltration::shifted(int64_t delta) const {
    auto steps = steps_;
    for (auto& [i, v] : steps) i += delta;
    return RayFiltration(*f_, rank_, std::move(steps));
}

bool RayFiltration::operator==(const RayFiltration& o) const {
    if (f_ != o.f_ || rank_ != o.rank_ || steps_.size() != o.steps_.size()) return false;
    for (size_t k = 0; k < steps_.size(); ++k)
        if (steps_[k].first != o.steps_[k].first || steps_[k].second != o.steps_[k].second) return false;
    return true;
}

int ConeDecomp::total_dim() const {
    int d = 0;
    for (auto& [chi, v] : parts) d += v.dim();
    return d;
}

void ConeDecomp::eigen_rows(const Fq& f, int rank, FqMatrix& rows, std::vector<IntVec>& chars) const {
    std::vector<FqVec> rs;
    chars.clear();
    for (auto& [chi, v] : parts)
        for (int i = 0; i < v.dim(); ++i) {
            rs.push_back(v.basis().row(i));
            chars.push_back(chi);
        }
    rows = FqMatrix::from_rows(f, rs, rank);
}

namespace {

// Canonical complement of g inside ambient-space f_space (g ⊆ f_space):
// greedy extension of g by f_space's echelon rows.
Subspace canonical_complement(const Subspace& f_space, const Subspace& g) {
    const Fq& f = f_space.field();
    std::vector<FqVec> chosen;
    Subspace acc = g;
    for (int i = 0; i < f_space.dim(); ++i) {
        FqVec row = f_space.basis().row(i);
        Subspace ext = acc.sum(Subspace::span(FqMatrix::from_rows(f, {row}, f_space.ambient())));
        if (ext.dim() > acc.dim()) {
            chosen.push_back(row);
            acc = ext;
        }
    }
    return Subspace::span(FqMatrix::from_rows(f, chosen, f_space.ambient()));
}

struct ConeContext {
    const Fan* fan;
    int cone_id;
    const std::vector<RayFiltration>* filts;
    std::vector<int> ray_ids;
    std::vector<std::vector<int64_t>> jump_sets;       // per cone ray
    std::vector<std::vector<Subspace>> jump_spaces;    // aligned with jump_sets
    int rank;
    const Fq* f;

    Subspace filtration_value(int j, int64_t level) const {
        return (*filts)[ray_ids[j]].at(level);
    }

    // next jump strictly above jump_sets[j][idx]; -1 if none
    int next_jump_idx(int j, int idx) const {
        return idx + 1 < static_cast<int>(jump_sets[j].size()) ? idx + 1 : -1;
    }
};

// Intersection cache over tuples of jump indices (-2 encodes "above top" = zero).
struct FCache {
    const ConeContext* cx;
    std::map<std::vector<int>, Subspace> memo;

    Subspace get(const std::vector<int>& idx_tuple) {
        auto it = memo.find(idx_tuple);
        if (it != memo.end()) return it->second;
        Subspace acc = Subspace::full(*cx->f, cx->rank);
        for (size_t j = 0; j < idx_tuple.size(); ++j) {
            if (idx_tuple[j] == -2) {
                acc = Subspace::zero(*cx->f, cx->rank);
                break;
            }
            acc = acc.intersect(cx->jump_spaces[j][idx_tuple[j]]);
        }
        memo.emplace(idx_tuple, acc);
        return acc;
    }
};

bool verify_decomp_impl(const Fan& fan, int cone_id, const std::vector<RayFiltration>& filts,
                        const ConeDecomp& dec, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (dec.parts.empty()) return fail("empty decomposition");
    const Fq& f = dec.parts.front().second.field();
    int rank = dec.parts.front().second.ambient();
    for (size_t i = 0; i + 1 < dec.parts.size(); ++i)
        if (!(dec.parts[i].first < dec.parts[i + 1].first))
            return fail("characters not sorted/distinct");
    int total = 0;
    std::vector<FqVec> all_rows;
    for (auto& [chi, v] : dec.parts) {
        if (v.dim() == 0) return fail("zero summand");
        total += v.dim();
        for (int i = 0; i < v.dim(); ++i) all_rows.push_back(v.basis().row(i));
    }
    if (total != rank) return fail("summand dimensions do not add up to the rank");
    if (FqMatrix::from_rows(f, all_rows, rank).rank() != rank) return fail("summands are not independent");
    const auto& cone = fan.max_cone(cone_id);
    for (size_t j = 0; j < cone.size(); ++j) {
        const auto& filt = filts[cone[j]];
        // Both sides are decreasing step functions of the level; agreement at
        // every point where either side can change pins them everywhere.
        std::set<int64_t> levels;
        for (int64_t l : filt.jumps()) levels.insert(l);
        levels.insert(filt.n_max() + 1);
        for (auto& [chi, v] : dec.parts) levels.insert(pairing(chi, fan.ray(cone[j])));
        for (int64_t lvl : levels) {
            Subspace expected = filt.at(lvl);
            Subspace got = Subspace::zero(f, rank);
            for (auto& [chi, v] : dec.parts)
                if (pairing(chi, fan.ray(cone[j])) >= lvl) got = got.sum(v);
            if (!(got == expected)) {
                std::ostringstream os;
                os << "filtration mismatch at cone ray " << cone[j] << " level " << lvl;
                return fail(os.str());
            }
        }
    }
    return true;
}

}  // namespace

CompatResult check_compatibility(const Fan& fan, int cone_id,
                                 const std::vector<RayFiltration>& filts) {
    if (static_cast<int>(filts.size()) != fan.n_rays())
        throw ToricError("one filtration per fan ray required");
    const auto& cone = fan.max_cone(cone_id);
    const Fq& f = filts.front().field();
    int rank = filts.front().rank();
    for (auto& fl : filts) {
        if (&fl.field() != &f) throw ToricError("filtration fields differ");
        if (fl.rank() != rank) throw ToricError("filtration ranks differ");
    }

    ConeContext cx;
    cx.fan = &fan;
    cx.cone_id = cone_id;
    cx.filts = &filts;
    cx.rank = rank;
    cx.f = &f;
    for (int id : cone) {
        cx.ray_ids.push_back(id);
        cx.jump_sets.push_back(filts[id].jumps());
        std::vector<Subspace> spaces;
        for (auto& [i, v] : filts[id].steps()) spaces.push_back(v);
        cx.jump_spaces.push_back(spaces);
    }
    int k = static_cast<int>(cone.size());

    // all index tuples over the jump sets
    std::vector<std::vector<int>> tuples;
    {
        std::vector<int> cur(k, 0);
        while (true) {
            tuples.push_back(cur);
            int j = k - 1;
            while (j >= 0 && cur[j] + 1 >= static_cast<int>(cx.jump_sets[j].size())) {
                cur[j] = 0;
                --j;
            }
            if (j < 0) break;
            ++cur[j];
        }
    }

    FCache cache{&cx, {}};
    auto value_tuple = [&](const std::vector<int>& idx) {
        std::vector<int64_t> v(k);
        for (int j = 0; j < k; ++j) v[j] = cx.jump_sets[j][idx[j]];
        return v;
    };

    // inclusion-exclusion multiplicity: m(t) = sum over raise-subsets
    std::map<std::vector<int>, int64_t> mult;
    for (auto& t : tuples) {
        int64_t m = 0;
        for (int mask = 0; mask < (1 << k); ++mask) {
            std::vector<int> raised = t;
            bool zero = false;
            for (int j = 0; j < k; ++j)
                if (mask & (1 << j)) {
                    int nx = cx.next_jump_idx(j, t[j]);
                    if (nx < 0) {
                        zero = true;
                        break;
                    }
                    raised[j] = nx;
                }
            if (zero) continue;
            int sign = __builtin_popcount(mask) % 2 ? -1 : 1;
            m += sign * cache.get(raised).dim();
        }
        if (m < 0) {
            IncompatCert cert;
            cert.cone_id = cone_id;
            cert.tuple = value_tuple(t);
            cert.multiplicity = m;
            cert.reason = "graded multiplicity is negative";
            return cert;
        }
        mult[t] = m;
    }

    // descending linear extension of the componentwise order
    std::vector<std::vector<int>> order = tuples;
    std::sort(order.begin(), order.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        int sa = std::accumulate(a.begin(), a.end(), 0);
        int sb = std::accumulate(b.begin(), b.end(), 0);
        if (sa != sb) return sa > sb;
        return a > b;
    });

    auto deeper_span = [&](const std::vector<int>& t) {
        Subspace d = Subspace::zero(f, rank);
        for (int j = 0; j < k; ++j) {
            int nx = cx.next_jump_idx(j, t[j]);
            if (nx < 0) continue;
            std::vector<int> raised = t;
            raised[j] = nx;
            d = d.sum(cache.get(raised));
        }
        return d;
    };

    auto make_decomp = [&](const std::map<std::vector<int>, Subspace>& assignment) {
        ConeDecomp dec;
        dec.cone_id = cone_id;
        for (auto& [t, space] : assignment) {
            if (space.dim() == 0) continue;
            IntVec values = value_tuple(t);
            dec.parts.emplace_back(fan.cone_character(cone_id, values), space);
        }
        std::sort(dec.parts.begin(), dec.parts.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return dec;
    };

    // greedy pass with canonical complements
    {
        std::map<std::vector<int>, Subspace> assignment;
        Subspace assigned = Subspace::zero(f, rank);
        bool ok = true;
        for (auto& t : order) {
            if (mult[t] == 0) continue;
            Subspace ft = cache.get(t);
            Subspace g = deeper_span(t).sum(assigned.intersect(ft));
            Subspace et = canonical_complement(ft, g);
            if (et.dim() != mult[t]) {
                ok = false;
                break;
            }
            assignment[t] = et;
            assigned = assigned.sum(et);
        }
        if (ok && assigned.dim() == rank) {
            ConeDecomp dec = make_decomp(assignment);
            std::string why;
            if (verify_decomp_impl(fan, cone_id, filts, dec, &why)) return dec;
        }
    }

    // exhaustive fallback with forced dimensions
    std::vector<std::vector<int>> active;
    for (auto& t : order)
        if (mult[t] > 0) active.push_back(t);
    int64_t budget = 500000;
    std::map<std::vector<int>, Subspace> assignment;
    std::function<bool(size_t, Subspace)> search = [&](size_t pos, Subspace assigned) -> bool {
        if (--budget < 0) throw ToricError("compatibility search budget exceeded");
        if (pos == active.size()) {
            ConeDecomp dec = make_decomp(assignment);
            std::string why;
            return verify_decomp_impl(fan, cone_id, filts, dec, &why);
        }
        const auto& t = active[pos];
        Subspace ft = cache.get(t);
        int want = static_cast<int>(mult[t]);
        // candidate subspaces in F(t) coordinates
        std::vector<Subspace> cands = enumerate_subspaces(f, ft.dim(), want, 200000);
        for (auto& c : cands) {
            // lift to ambient coordinates through ft's basis
            std::vector<FqVec> rows;
            for (int i = 0; i < c.dim(); ++i) rows.push_back(ft.basis().apply_row(c.basis().row(i)));
            Subspace s = Subspace::span(FqMatrix::from_rows(f, rows, rank));
            if (s.dim() != want) continue;
            if (s.intersect(assigned).dim() != 0) continue;
            assignment[t] = s;
            if (search(pos + 1, assigned.sum(s))) return true;
            assignment.erase(t);
        }
        return false;
    };
    if (search(0, Subspace::zero(f, rank))) {
        ConeDecomp dec = make_decomp(assignment);
        std::string why;
        if (verify_decomp_impl(fan, cone_id, filts, dec, &why)) return dec;
        throw ToricError("internal: exhaustive decomposition failed re-verification");
    }
    IncompatCert cert;
    cert.cone_id = cone_id;
    cert.reason = "no graded decomposition exists (exhaustive search over forced dimensions)";
    return cert;
}

ToricBundle ToricBundle::build(std::shared_ptr<const Fan> fan, const Fq& f,
                               std::vector<RayFiltration> filts) {
    if (!fan) throw ToricError("null fan");
    if (static_cast<int>(filts.size()) != fan->n_rays())
        throw ToricError("expected one filtration per ray, got " + std::to_string(filts.size()));
    std::vector<ConeDecomp> decomps;
    for (int c = 0; c < fan->n_max_cones(); ++c) {
        CompatResult res = check_compatibility(*fan, c, filts);
        if (std::holds_alternative<IncompatCert>(res)) {
            const auto& cert = std::get<IncompatCert>(res);
            std::ostringstream os;
            os << "filtrations are incompatible on maximal cone " << cert.cone_id << ": " << cert.reason;
            if (cert.tuple) {
                os << " at levels (";
                for (size_t i = 0; i < cert.tuple->size(); ++i) os << (i ? "," : "") << (*cert.tuple)[i];
                os << "), multiplicity " << cert.multiplicity;
            }
            throw ToricError(os.str());
        }
        decomps.push_back(std::get<ConeDecomp>(res));
    }
    return build_with_decomps(std::move(fan), f, std::move(filts), std::move(decomps));
}

ToricBundle ToricBundle::build_with_decomps(std::shared_ptr<const Fan> fan, const Fq& f,
                                            std::vector<RayFiltration> filts,
                                            std::vector<ConeDecomp> decomps) {
    if (!fan) throw ToricError("null fan");
    ToricBundle b;
    b.fan_ = std::move(fan);
    b.f_ = &f;
    if (filts.empty()) throw ToricError("bundle needs filtrations");
    b.rank_ = filts.front().rank();
    for (auto& fl : filts) {
        if (&fl.field() != &f) throw ToricError("filtration field mismatch");
        if (fl.rank() != b.rank_) throw ToricError("filtration rank mismatch");
    }
    if (static_cast<int>(filts.size()) != b.fan_->n_rays())
        throw ToricError("expected one filtration per ray");
    if (static_cast<int>(decomps.size()) != b.fan_->n_max_cones())
        throw ToricError("expected one decomposition per maximal cone");
    for (int c = 0; c < b.fan_->n_max_cones(); ++c) {
        decomps[c].cone_id = c;
        std::string why;
        if (!verify_decomp_impl(*b.fan_, c, filts, decomps[c], &why))
            throw ToricError("cone decomposition invalid on cone " + std::to_string(c) + ": " + why);
    }
    b.filts_ = std::move(filts);
    b.decomps_ = std::move(decomps);
    return b;
}

const RayFiltration& ToricBundle::filtration(int ray) const {
    if (ray < 0 || ray >= static_cast<int>(filts_.size())) throw ToricError("ray index out of range");
    return filts_[ray];
}

const ConeDecomp& ToricBundle::decomp(int cone_id) const {
    if (cone_id < 0 || cone_id >= static_cast<int>(decomps_.size()))
        throw ToricError("cone index out of range");
    return decomps_[cone_id];
}

JumpData jump_data(const ToricBundle& b, int ray) {
    const RayFiltration& f = b.filtration(ray);
    JumpData jd;
    jd.jumps = f.jumps();
    for (auto& [i, v] : f.steps()) jd.dims.push_back(v.dim());
    jd.n_max = f.n_max();
    jd.n_min = f.n_min();
    return jd;
}

int64_t klyachko_length(const ToricBundle& b) {
    int64_t kl = 0;
    for (int r = 0; r < b.fan().n_rays(); ++r) {
        const RayFiltration& f = b.filtration(r);
        kl = std::max(kl, f.n_max() - f.n_min());
    }
    return kl;
}

namespace {

FqVec reduce_mod_p(const Fq& f, const IntVec& v) {
    FqVec r;
    r.reserve(v.size());
    for (int64_t x : v) r.push_back(FqElem(f, x));
    return r;
}

}  // namespace

ToricBundle tangent_bundle(std::shared_ptr<const Fan> fan, const Fq& f) {
    int n = fan->rank();
    std::vector<RayFiltration> filts;
    for (int r = 0; r < fan->n_rays(); ++r) {
        Subspace line = Subspace::span(FqMatrix::from_rows(f, {reduce_mod_p(f, fan->ray(r))}, n));
        // on a rank-1 fan the ray line is the whole fiber: one jump at 1
        if (line.dim() == n)
            filts.push_back(RayFiltration(f, n, {{1, Subspace::full(f, n)}}));
        else
            filts.push_back(RayFiltration(f, n, {{0, Subspace::full(f, n)}, {1, line}}));
    }
    std::vector<ConeDecomp> decomps;
    for (int c = 0; c < fan->n_max_cones(); ++c) {
        const auto& cone = fan->max_cone(c);
        ConeDecomp dec;
        dec.cone_id = c;
        const IntMat& duals = fan->cone_duals(c);
        for (size_t j = 0; j < cone.size(); ++j) {
            Subspace line = Subspace::span(FqMatrix::from_rows(f, {reduce_mod_p(f, fan->ray(cone[j]))}, n));
            dec.parts.emplace_back(duals[j], line);
        }
        if (static_cast<int>(cone.size()) < n) {
            // directions transverse to the cone sit at the zero character
            std::vector<FqVec> rows;
            // completion rows live in the validated unimodular completion
            IntMat ray_rows;
            for (int i : cone) ray_rows.push_back(fan->ray(i));
            IntMat ext = unimodular_completion(ray_rows, n);
            for (auto& e : ext) rows.push_back(reduce_mod_p(f, e));
            dec.parts.emplace_back(IntVec(n, 0), Subspace::span(FqMatrix::from_rows(f, rows, n)));
        }
        std::sort(dec.parts.begin(), dec.parts.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        decomps.push_back(std::move(dec));
    }
    return ToricBundle::build_with_decomps(std::move(fan), f, std::move(filts), std::move(decomps));
}

ToricBundle cotangent_bundle(std::shared_ptr<const Fan> fan, const Fq& f) {
    int n = fan->rank();
    std::vector<RayFiltration> filts;
    for (int r = 0; r < fan->n_rays(); ++r) {
        FqMatrix ray_row = FqMatrix::from_rows(f, {reduce_mod_p(f, fan->ray(r))}, n);
        Subspace perp = Subspace::span(ray_row.kernel());
        // on a rank-1 fan the annihilator is zero: one jump at -1
        if (perp.dim() == 0)
            filts.push_back(RayFiltration(f, n, {{-1, Subspace::full(f, n)}}));
        else
            filts.push_back(RayFiltration(f, n, {{-1, Subspace::full(f, n)}, {0, perp}}));
    }
    std::vector<ConeDecomp> decomps;
    for (int c = 0; c < fan->n_max_cones(); ++c) {
        const auto& cone = fan->max_cone(c);
        ConeDecomp dec;
        dec.cone_id = c;
        const IntMat& duals = fan->cone_duals(c);
        for (size_t j = 0; j < cone.size(); ++j) {
            IntVec neg = duals[j];
            for (auto& x : neg) x = -x;
            Subspace line = Subspace::span(FqMatrix::from_rows(f, {reduce_mod_p(f, duals[j])}, n));
            dec.parts.emplace_back(neg, line);
        }
        if (static_cast<int>(cone.size()) < n) {
            // annihilator of the cone span at the zero character
            IntMat ray_rows;
            for (int i : cone) ray_rows.push_back(fan->ray(i));
            FqMatrix m(f, static_cast<int>(ray_rows.size()), n);
            for (size_t i = 0; i < ray_rows.size(); ++i)
                for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = FqElem(f, ray_rows[i][j]);
            dec.parts.emplace_back(IntVec(n, 0), Subspace::span(m.kernel()));
        }
        std::sort(dec.parts.begin(), dec.parts.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        decomps.push_back(std::move(dec));
    }
    return ToricBundle::build_with_decomps(std::move(fan), f, std::move(filts), std::move(decomps));
}

ToricBundle line_bundle(std::shared_ptr<const Fan> fan, const Fq& f, const ToricLineData& data) {
    return direct_sum_lines(std::move(fan), f, {data});
}

ToricBundle direct_sum_lines(std::shared_ptr<const Fan> fan, const Fq& f,
                             const std::vector<ToricLineData>& lines) {
    int m = static_cast<int>(lines.size());
    if (m == 0) throw ToricError("empty direct sum");
    for (auto& l : lines)
        if (static_cast<int>(l.size()) != fan->n_rays())
            throw ToricError("line data needs one value per ray");
    std::vector<RayFiltration> filts;
    for (int r = 0; r < fan->n_rays(); ++r) {
        std::vector<int64_t> values;
        for (auto& l : lines) values.push_back(l[r]);
        std::vector<int64_t> distinct = values;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<std::pair<int64_t, Subspace>> steps;
        for (int64_t v : distinct) {
            std::vector<FqVec> rows;
            for (int s = 0; s < m; ++s)
                if (values[s] >= v) {
                    FqVec unit(m, FqElem::zero(f));
                    unit[s] = FqElem::one(f);
                    rows.push_back(unit);
                }
            steps.emplace_back(v, Subspace::span(FqMatrix::from_rows(f, rows, m)));
        }
        filts.push_back(RayFiltration(f, m, std::move(steps)));
    }
    std::vector<ConeDecomp> decomps;
    for (int c = 0; c < fan->n_max_cones(); ++c) {
        const auto& cone = fan->max_cone(c);
        std::map<IntVec, std::vector<int>> by_char;
        for (int s = 0; s < m; ++s) {
            IntVec values;
            for (int j : cone) values.push_back(lines[s][j]);
            by_char[fan->cone_character(c, values)].push_back(s);
        }
        ConeDecomp dec;
        dec.cone_id = c;
        for (auto& [chi, idxs] : by_char) {
            std::vector<FqVec> rows;
            for (int s : idxs) {
                FqVec unit(m, FqElem::zero(f));
                unit[s] = FqElem::one(f);
                rows.push_back(unit);
            }
            dec.parts.emplace_back(chi, Subspace::span(FqMatrix::from_rows(f, rows, m)));
        }
        decomps.push_back(std::move(dec));
    }
    return ToricBundle::build_with_decomps(std::move(fan), f, std::move(filts), std::move(decomps));
}

ToricBundle dual(const ToricBundle& b) {
    const Fq& f = b.field();
    int r = b.rank();
    std::vector<RayFiltration> filts;
    for (int ray = 0; ray < b.fan().n_rays(); ++ray) {
        const RayFiltration& e = b.filtration(ray);
        auto ann = [&](const Subspace& v) { return Subspace::span(v.basis().kernel()); };
        std::vector<std::pair<int64_t, Subspace>> steps;
        auto ejumps = e.jumps();
        // dual jump at -i with value ann(E(i+1))
        for (auto it = ejumps.rbegin(); it != ejumps.rend(); ++it)
            steps.emplace_back(-*it, ann(e.at(*it + 1)));
        filts.push_back(RayFiltration(f, r, std::move(steps)));
    }
    std::vector<ConeDecomp> decomps;
    for (int c = 0; c < b.fan().n_max_cones(); ++c) {
        const ConeDecomp& dec = b.decomp(c);
        FqMatrix rows;
        std::vector<IntVec> chars;
        dec.eigen_rows(f, r, rows, chars);
        FqMatrix dual_rows = rows.inverse().transpose();
        ConeDecomp dd;
        dd.cone_id = c;
        int off = 0;
        for (auto& [chi, v] : dec.parts) {
            IntVec neg = chi;
            for (auto& x : neg) x = -x;
            std::vector<FqVec> part_rows;
            for (int i = 0; i < v.dim(); ++i) part_rows.push_back(dual_rows.row(off + i));
            dd.parts.emplace_back(neg, Subspace::span(FqMatrix::from_rows(f, part_rows, r)));
            off += v.dim();
        }
        std::sort(dd.parts.begin(), dd.parts.end(),
                  [](const auto& a, const auto& b2) { return a.first < b2.first; });
        decomps.push_back(std::move(dd));
    }
    return ToricBundle::build_with_decomps(b.fan_ptr(), f, std::move(filts), std::move(decomps));
}

std::vector<std::vector<int>> sym_exponents(int letters, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(letters, 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == letters - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            cur[pos] = v;
            rec(pos + 1, remaining - v);
        }
    };
    if (letters < 1) throw ToricError("symmetric power needs at least one letter");
    rec(0, degree);
    return out;
}

int sym_index(const std::vector<std::vector<int>>& table, const std::vector<int>& e) {
    for (size_t i = 0; i < table.size(); ++i)
        if (table[i] == e) return static_cast<int>(i);
    throw ToricError("exponent tuple not in symmetric basis table");
}

namespace {

// product of linear forms rows[t]^e[t] as a vector in standard sym coords
FqVec sym_product(const Fq& f, const FqMatrix& rows, const std::vector<int>& exps,
                  const std::vector<std::vector<int>>& table) {
    int r = rows.cols();
    // dense polynomial in r variables, keyed by exponent tuple
    std::map<std::vector<int>, FqElem> poly;
    poly[std::vector<int>(r, 0)] = FqElem::one(f);
    for (int t = 0; t < rows.rows(); ++t) {
        for (int rep = 0; rep < exps[t]; ++rep) {
            std::map<std::vector<int>, FqElem> next;
            for (auto& [e, c] : poly)
                for (int v = 0; v < r; ++v) {
                    if (rows.at(t, v).is_zero()) continue;
                    std::vector<int> ne = e;
                    ++ne[v];
                    auto it = next.find(ne);
                    if (it == next.end())
                        next.emplace(ne, c * rows.at(t, v));
                    else {
                        it->second += c * rows.at(t, v);
                        if (it->second.is_zero()) next.erase(it);
                    }
                }
            poly = std::move(next);
        }
    }
    FqVec out(table.size(), FqElem::zero(f));
    for (auto& [e, c] : poly) out[sym_index(table, e)] = c;
    return out;
}

}  // namespace

void sym_eigen_basis(const ToricBundle& b, int m, int cone_id, FqMatrix& rows,
                     std::vector<IntVec>& chars, std::vector<std::vector<int>>& row_exps) {
    const Fq& f = b.field();
    int r = b.rank();
    FqMatrix base_rows;
    std::vector<IntVec> base_chars;
    b.decomp(cone_id).eigen_rows(f, r, base_rows, base_chars);
    auto table = sym_exponents(r, m);
    std::vector<FqVec> out_rows;
    chars.clear();
    row_exps.clear();
    for (auto& e : table) {
        out_rows.push_back(sym_product(f, base_rows, e, table));
        IntVec chi(b.fan().rank(), 0);
        for (int t = 0; t < r; ++t)
            for (int j = 0; j < b.fan().rank(); ++j) chi[j] += int64_t(e[t]) * base_chars[t][j];
        chars.push_back(chi);
        row_exps.push_back(e);
    }
    rows = FqMatrix::from_rows(f, out_rows, static_cast<int>(table.size()));
}

ToricBundle sym_power(const ToricBundle& b, int m) {
    if (m < 1) throw ToricError("symmetric power degree must be >= 1");
    const Fq& f = b.field();
    auto table = sym_exponents(b.rank(), m);
    int dim = static_cast<int>(table.size());

    // filtration of each ray from any cone containing it
    std::vector<int> cone_of_ray(b.fan().n_rays(), -1);
    for (int c = 0; c < b.fan().n_max_cones(); ++c)
        for (int idx : b.fan().max_cone(c))
            if (cone_of_ray[idx] < 0) cone_of_ray[idx] = c;

    std::vector<FqMatrix> cone_rows(b.fan().n_max_cones());
    std::vector<std::vector<IntVec>> cone_chars(b.fan().n_max_cones());
    for (int c = 0; c < b.fan().n_max_cones(); ++c) {
        std::vector<std::vector<int>> exps;
        sym_eigen_basis(b, m, c, cone_rows[c], cone_chars[c], exps);
    }

    std::vector<RayFiltration> filts;
    for (int ray = 0; ray < b.fan().n_rays(); ++ray) {
        int c = cone_of_ray[ray];
        std::vector<int64_t> pairings;
        for (auto& chi : cone_chars[c]) pairings.push_back(pairing(chi, b.fan().ray(ray)));
        std::vector<int64_t> levels = pairings;
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        std::vector<std::pair<int64_t, Subspace>> steps;
        for (int64_t lvl : levels) {
            std::vector<FqVec> rows;
            for (int i = 0; i < dim; ++i)
                if (pairings[i] >= lvl) rows.push_back(cone_rows[c].row(i));
            Subspace v = Subspace::span(FqMatrix::from_rows(f, rows, dim));
            if (steps.empty() || !(steps.back().second == v)) steps.emplace_back(lvl, v);
            else steps.back().first = lvl;  // same space at a higher level: keep the highest
        }
        filts.push_back(RayFiltration(f, dim, std::move(steps)));
    }

    std::vector<ConeDecomp> decomps;
    for (int c = 0; c < b.fan().n_max_cones(); ++c) {
        std::map<IntVec, std::vector<int>> by_char;
        for (int i = 0; i < dim; ++i) by_char[cone_chars[c][i]].push_back(i);
        ConeDecomp dec;
        dec.cone_id = c;
        for (auto& [chi, idxs] : by_char) {
            std::vector<FqVec> rows;
            for (int i : idxs) rows.push_back(cone_rows[c].row(i));
            dec.parts.emplace_back(chi, Subspace::span(FqMatrix::from_rows(f, rows, dim)));
        }
        decomps.push_back(std::move(dec));
    }
    return ToricBundle::build_with_decomps(b.fan_ptr(), f, std::move(filts), std::move(decomps));
}

ToricBundle twist(const ToricBundle& b, const ToricLineData& data) {
    if (static_cast<int>(data.size()) != b.fan().n_rays())
        throw ToricError("twist data needs one value per ray");
    const Fq& f = b.field();
    std::vector<RayFiltration> filts;
    for (int ray = 0; ray < b.fan().n_rays(); ++ray)
        filts.push_back(b.filtration(ray).shifted(data[ray]));
    std::vector<ConeDecomp> decomps;
    for (int c = 0; c < b.fan().n_max_cones(); ++c) {
        const auto& cone = b.fan().max_cone(c);
        IntVec values;
        for (int j : cone) values.push_back(data[j]);
        IntVec lambda = b.fan().cone_character(c, values);
        ConeDecomp dec = b.decomp(c);
        for (auto& [chi, v] : dec.parts)
            for (size_t i = 0; i < chi.size(); ++i) chi[i] += lambda[i];
        std::sort(dec.parts.begin(), dec.parts.end(),
                  [](const auto& a, const auto& b2) { return a.first < b2.first; });
        decomps.push_back(std::move(dec));
    }
    return ToricBundle::build_with_decomps(b.fan_ptr(), f, std::move(filts), std::move(decomps));
}

ToricLineData det_data(const ToricBundle& b) {
    ToricLineData out;
    for (int ray = 0; ray < b.fan().n_rays(); ++ray) {
        const RayFiltration& fl = b.filtration(ray);
        int64_t v = 0;
        for (int64_t i : fl.jumps()) v += i * (fl.dim_at(i) - fl.dim_at(i + 1));
        out.push_back(v);
    }
    return out;
}

ToricLineData line_power(const ToricLineData& data, int64_t k) {
    ToricLineData out = data;
    for (auto& x : out) x *= k;
    return out;
}

ToricLineData canonical_line(const Fan& fan) {
    return ToricLineData(fan.n_rays(), -1);
}

}  // namespace toricfs
