#include "signedflow/generators.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

#include "signedflow/admissibility.hpp"
#include "signedflow/flow_engine.hpp"

namespace signedflow {

bool StringSpec::nontrivial() const {
    int bridge_count = 0;
    for (bool b : bridges) bridge_count += b ? 1 : 0;
    return beta + bridge_count >= 2;
}

SpTerm gen_string(int beta, const std::vector<bool>& bridges) {
    if (beta < 0) throw std::invalid_argument("beta must be nonnegative");
    if (static_cast<int>(bridges.size()) != beta + 1)
        throw std::invalid_argument("need beta + 1 bridge slots");
    std::vector<SpTerm> parts;
    for (int i = 0; i <= beta; ++i) {
        if (bridges[i]) parts.push_back(SpTerm::pos_edge());
        if (i < beta) parts.push_back(SpTerm::digon());
    }
    if (parts.empty()) throw std::invalid_argument("empty string (beta 0 needs one bridge)");
    if (parts.size() == 1) return parts[0];
    return SpTerm::series(std::move(parts));
}

SpTerm gen_necklace(const StringSpec& s1, const StringSpec& s2) {
    if (!s1.nontrivial() && !s2.nontrivial())
        throw std::invalid_argument("a necklace needs a nontrivial string");
    SpTerm a = gen_string(s1.beta, s1.bridges);
    SpTerm b = gen_string(s2.beta, s2.bridges);
    return canonicalize(SpTerm::parallel({a, b}));
}

namespace {

enum class Restrict { Any, NonSeries, NonParallel };

void enum_rec(int n, Restrict r, const std::function<void(const SpTerm&)>& sink);

// fills series slots left to right; at least 2 children total
void series_slots(int remaining, std::vector<SpTerm>& acc,
                  const std::function<void(const SpTerm&)>& sink) {
    if (remaining == 0) {
        if (acc.size() >= 2) sink(SpTerm::series(std::vector<SpTerm>(acc)));
        return;
    }
    for (int size = 1; size <= remaining; ++size) {
        if (acc.empty() && size == remaining) continue;  // would leave a single child
        enum_rec(size, Restrict::NonSeries, [&](const SpTerm& child) {
            acc.push_back(child);
            series_slots(remaining - size, acc, sink);
            acc.pop_back();
        });
    }
}

// parallel children non-decreasing in canonical term order
void parallel_slots(int remaining, std::vector<SpTerm>& acc,
                    const std::function<void(const SpTerm&)>& sink) {
    if (remaining == 0) {
        if (acc.size() >= 2) sink(SpTerm::parallel(std::vector<SpTerm>(acc)));
        return;
    }
    for (int size = 1; size <= remaining; ++size) {
        if (acc.empty() && size == remaining) continue;
        enum_rec(size, Restrict::NonParallel, [&](const SpTerm& child) {
            if (!acc.empty() && compare_terms(child, acc.back()) < 0) return;
            acc.push_back(child);
            parallel_slots(remaining - size, acc, sink);
            acc.pop_back();
        });
    }
}

void enum_rec(int n, Restrict r, const std::function<void(const SpTerm&)>& sink) {
    if (n == 1) {
        sink(SpTerm::pos_edge());
        sink(SpTerm::neg_edge());
        return;
    }
    std::vector<SpTerm> acc;
    if (r != Restrict::NonSeries) series_slots(n, acc, sink);
    if (r != Restrict::NonParallel) parallel_slots(n, acc, sink);
}

}  // namespace

void enumerate_terms(int edges, const std::function<void(const SpTerm&)>& sink) {
    if (edges < 1) throw std::invalid_argument("edges must be positive");
    enum_rec(edges, Restrict::Any, sink);
}

void enumerate_terms_upto(int max_edges, const std::function<void(const SpTerm&)>& sink) {
    for (int n = 1; n <= max_edges; ++n) enumerate_terms(n, sink);
}

std::vector<SpTerm> enumerate_terms_list(int max_edges) {
    std::vector<SpTerm> out;
    enumerate_terms_upto(max_edges, [&](const SpTerm& t) { out.push_back(t); });
    return out;
}

std::uint64_t count_terms(int edges) {
    std::uint64_t n = 0;
    enumerate_terms(edges, [&](const SpTerm&) { ++n; });
    return n;
}

SpTerm random_term(std::mt19937_64& rng, int edges) {
    if (edges < 1) throw std::invalid_argument("edges must be positive");
    std::function<SpTerm(int)> go = [&](int n) -> SpTerm {
        if (n == 1) return (rng() & 1) ? SpTerm::pos_edge() : SpTerm::neg_edge();
        std::uniform_int_distribution<int> parts_dist(2, std::min(n, 4));
        int m = parts_dist(rng);
        // random composition of n into m positive parts
        std::vector<int> sizes(m, 1);
        for (int extra = n - m; extra > 0; --extra)
            sizes[std::uniform_int_distribution<int>(0, m - 1)(rng)] += 1;
        std::vector<SpTerm> kids;
        for (int s : sizes) kids.push_back(go(s));
        bool series = (rng() & 1) != 0;
        return series ? SpTerm::series(std::move(kids)) : SpTerm::parallel(std::move(kids));
    };
    return canonicalize(go(edges));
}

CensusRecord census_record(std::uint64_t index, const SpTerm& t) {
    CensusRecord rec;
    rec.index = index;
    rec.term = t;
    rec.term_text = print_sp(t);
    rec.admissible = is_flow_admissible_term(t).admissible;
    rec.flow_number = flow_number_sp(t);
    rec.dp_ok = dp_flow(t, 6).has_value();
    ConstructiveResult c = constructive_flow(t);
    rec.constructive_ok = c.flow.has_value();
    rec.fallbacks = c.fallbacks;
    return rec;
}

namespace {

void summarize(CensusSummary& sum, const CensusRecord& rec) {
    ++sum.terms;
    if (rec.admissible) ++sum.admissible;
    if (rec.dp_ok != rec.admissible || rec.constructive_ok != rec.admissible)
        ++sum.disagreements;
    sum.fallback_events += rec.fallbacks;
    if (rec.flow_number) {
        ++sum.flow_number_histogram[*rec.flow_number];
        if (*rec.flow_number == 6) sum.flow_number_six.push_back(rec.term_text);
    }
}

}  // namespace

CensusSummary census(int max_edges, const std::function<bool(const CensusRecord&)>& sink,
                     int threads) {
    CensusSummary sum;
    if (threads <= 1) {
        std::uint64_t index = 0;
        bool stop = false;
        for (int n = 1; n <= max_edges && !stop; ++n) {
            enumerate_terms(n, [&](const SpTerm& t) {
                if (stop) return;
                CensusRecord rec = census_record(index++, t);
                summarize(sum, rec);
                if (!sink(rec)) stop = true;
            });
        }
        return sum;
    }

    // bounded work queue feeding worker threads; records are re-ordered by
    // index before they reach the sink, so output order is deterministic
    struct Shared {
        std::mutex mu;
        std::condition_variable work_cv, emit_cv, space_cv;
        std::deque<std::pair<std::uint64_t, SpTerm>> queue;
        std::map<std::uint64_t, CensusRecord> done;
        int inflight = 0;
        bool producing = true;
        std::atomic<bool> stop{false};
    } sh;
    const size_t kQueueCap = 4096;

    std::vector<std::thread> workers;
    for (int w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            while (true) {
                std::pair<std::uint64_t, SpTerm> item;
                {
                    std::unique_lock<std::mutex> lk(sh.mu);
                    sh.work_cv.wait(lk, [&] { return !sh.queue.empty() || !sh.producing; });
                    if (sh.queue.empty()) return;
                    item = std::move(sh.queue.front());
                    sh.queue.pop_front();
                    ++sh.inflight;
                    sh.space_cv.notify_one();
                }
                CensusRecord rec = census_record(item.first, item.second);
                {
                    std::lock_guard<std::mutex> lk(sh.mu);
                    --sh.inflight;
                    sh.done.emplace(rec.index, std::move(rec));
                    sh.emit_cv.notify_one();
                }
            }
        });
    }

    std::thread producer([&] {
        std::uint64_t index = 0;
        for (int n = 1; n <= max_edges && !sh.stop; ++n) {
            enumerate_terms(n, [&](const SpTerm& t) {
                if (sh.stop) return;
                std::unique_lock<std::mutex> lk(sh.mu);
                sh.space_cv.wait(lk, [&] { return sh.queue.size() < kQueueCap || sh.stop; });
                if (sh.stop) return;
                sh.queue.emplace_back(index++, t);
                sh.work_cv.notify_one();
            });
        }
        std::lock_guard<std::mutex> lk(sh.mu);
        sh.producing = false;
        sh.work_cv.notify_all();
        sh.emit_cv.notify_all();
    });

    std::uint64_t next = 0;
    while (true) {
        CensusRecord rec;
        {
            std::unique_lock<std::mutex> lk(sh.mu);
            sh.emit_cv.wait(lk, [&] {
                return sh.done.count(next) > 0 ||
                       (!sh.producing && sh.queue.empty() && sh.inflight == 0 && sh.done.empty());
            });
            auto it = sh.done.find(next);
            if (it == sh.done.end()) break;  // finished
            rec = std::move(it->second);
            sh.done.erase(it);
            ++next;
        }
        summarize(sum, rec);
        if (!sink(rec)) {
            sh.stop = true;
            {
                std::lock_guard<std::mutex> lk(sh.mu);
                sh.space_cv.notify_all();
            }
            break;
        }
    }
    sh.stop = true;
    {
        std::lock_guard<std::mutex> lk(sh.mu);
        sh.space_cv.notify_all();
    }
    producer.join();
    {
        std::lock_guard<std::mutex> lk(sh.mu);
        sh.producing = false;
        sh.work_cv.notify_all();
    }
    for (auto& w : workers) w.join();
    return sum;
}

}  // namespace signedflow
