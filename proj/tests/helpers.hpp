#pragma once

#include <string>
#include <vector>

#include "scrumcard/domain.hpp"

namespace scrumcard::testing {

// Small fluent builder for hand-made datasets in tests.
struct DatasetBuilder {
    CohortDataset d;

    DatasetBuilder() {
        d.team_id = "test-team";
        for (int s = 1; s <= d.config.sprint_count; ++s) {
            DonenessEvidence ev;
            ev.sprint = s;
            ev.unit_test_evidence = true;
            ev.e2e_test_evidence = true;
            ev.demo_failures = 0;
            ev.td_tasks_consistent = true;
            ev.docker_image_available = true;
            d.doneness.push_back(ev);
        }
    }

    DatasetBuilder& member(const std::string& id) {
        d.members.push_back({id, id});
        return *this;
    }

    DatasetBuilder& task(const std::string& id, int sprint,
                         std::optional<double> estimate = std::nullopt,
                         std::optional<int> planned = std::nullopt,
                         TaskKind kind = TaskKind::task) {
        Task t;
        t.task_id = id;
        t.title = id;
        t.kind = kind;
        t.sprint = sprint;
        t.estimate_hours = estimate;
        t.planned_assignees = planned;
        d.tasks.push_back(std::move(t));
        return *this;
    }

    DatasetBuilder& work(const std::string& task, const std::string& member, int day,
                         double hours) {
        d.effort.push_back({task, member, day, hours});
        return *this;
    }

    DatasetBuilder& meeting(const std::string& id, MeetingKind kind, int sprint, int day,
                            double minutes, std::vector<std::string> participants) {
        Meeting m;
        m.meeting_id = id;
        m.kind = kind;
        m.sprint = sprint;
        m.day = day;
        m.duration_minutes = minutes;
        m.participants = std::move(participants);
        d.meetings.push_back(std::move(m));
        return *this;
    }

    std::vector<std::string> all_member_ids() const {
        std::vector<std::string> ids;
        for (const auto& m : d.members) ids.push_back(m.member_id);
        return ids;
    }
};

}  // namespace scrumcard::testing
