#include "obsprob/kscheck.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace obsprob {

Ray Ray::canonical(std::array<long long, 4> coords) {
    long long divisor = 0;
    for (long long c : coords) divisor = std::gcd(divisor, c);
    if (divisor == 0) {
        throw std::invalid_argument("a ray needs a nonzero representative");
    }
    for (long long c : coords) {
        if (c != 0) {
            if (c < 0) divisor = -divisor;
            break;
        }
    }
    Ray ray;
    for (std::size_t i = 0; i < 4; ++i) ray.coords[i] = coords[i] / divisor;
    return ray;
}

Integer dot(const Ray& a, const Ray& b) {
    Integer total = 0;
    for (std::size_t i = 0; i < 4; ++i) total += Integer(a.coords[i]) * b.coords[i];
    return total;
}

bool Basis::orthogonal() const {
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (!dot(rays[i], rays[j]).is_zero()) return false;
        }
    }
    return true;
}

StructuralReport validate_system(const BasisSystem& s) {
    StructuralReport report;
    report.basis_count = s.bases.size();

    std::map<Ray, std::size_t> index_of;
    for (const Basis& basis : s.bases) {
        const bool ok = basis.orthogonal();
        report.basis_orthogonal.push_back(ok);
        if (!ok) report.all_orthogonal = false;
        for (const Ray& ray : basis.rays) {
            auto [it, inserted] = index_of.emplace(ray, report.rays.size());
            if (inserted) {
                report.rays.push_back(ray);
                report.occurrence_count.push_back(0);
            }
            ++report.occurrence_count[it->second];
        }
    }

    report.every_ray_twice =
        !report.rays.empty() &&
        std::all_of(report.occurrence_count.begin(), report.occurrence_count.end(),
                    [](std::size_t c) { return c == 2; });
    report.eighteen_nine_profile =
        report.basis_count == 9 && report.rays.size() == 18 && report.every_ray_twice;
    return report;
}

namespace {

enum class Mark : std::uint8_t { unknown, chosen, excluded };

struct SelectionSearch {
    const std::vector<std::array<std::size_t, 4>>& ray_ids;  // per basis
    std::vector<Mark> marks;                                 // per distinct ray
    std::size_t limit;
    Selection current;
    std::vector<Selection> found;

    void run(std::size_t basis) {
        if (found.size() >= limit) return;
        if (basis == ray_ids.size()) {
            found.push_back(current);
            return;
        }
        for (std::size_t pick = 0; pick < 4; ++pick) {
            if (marks[ray_ids[basis][pick]] == Mark::excluded) continue;
            bool blocked = false;
            for (std::size_t other = 0; other < 4; ++other) {
                if (other != pick && marks[ray_ids[basis][other]] == Mark::chosen) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;

            // Mark the picked ray chosen and its basis-mates excluded,
            // remembering what to undo.
            std::vector<std::pair<std::size_t, Mark>> undo;
            auto set = [&](std::size_t id, Mark mark) {
                if (marks[id] != mark) {
                    undo.emplace_back(id, marks[id]);
                    marks[id] = mark;
                }
            };
            set(ray_ids[basis][pick], Mark::chosen);
            for (std::size_t other = 0; other < 4; ++other) {
                if (other != pick) set(ray_ids[basis][other], Mark::excluded);
            }

            current.push_back(pick);
            run(basis + 1);
            current.pop_back();
            for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
                marks[it->first] = it->second;
            }
        }
    }
};

}  // namespace

std::vector<Selection> find_selections(const BasisSystem& s, std::size_t limit) {
    if (s.bases.size() > max_selection_bases) {
        throw std::length_error("selection search capped at " +
                                std::to_string(max_selection_bases) + " bases, got " +
                                std::to_string(s.bases.size()));
    }

    std::map<Ray, std::size_t> index_of;
    std::vector<std::array<std::size_t, 4>> ray_ids;
    for (const Basis& basis : s.bases) {
        std::array<std::size_t, 4> ids{};
        for (std::size_t i = 0; i < 4; ++i) {
            auto [it, inserted] = index_of.emplace(basis.rays[i], index_of.size());
            ids[i] = it->second;
        }
        ray_ids.push_back(ids);
    }

    SelectionSearch search{ray_ids, std::vector<Mark>(index_of.size(), Mark::unknown),
                           limit, {}, {}};
    search.run(0);
    return search.found;
}

ParityVerdict parity_obstruction(const BasisSystem& s) {
    const StructuralReport report = validate_system(s);
    if (!report.every_ray_twice) return ParityVerdict::not_applicable;
    return s.bases.size() % 2 == 1 ? ParityVerdict::obstruction
                                   : ParityVerdict::no_obstruction;
}

bool model_exists(const BasisSystem& s) { return !find_selections(s, 1).empty(); }

}  // namespace obsprob
