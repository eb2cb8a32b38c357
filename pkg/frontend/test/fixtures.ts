/**
 * Frozen responses of the real analysis service for the worked-example job
 * (five test traces t1..t5 vs five control traces t6..t10, min_support 2),
 * captured verbatim at similarity thresholds 0.6, 0.9, and 1.0.
 */

import type { JobStatus, PatternsResponse } from "../src/types.js";

export const FIXTURE_JOB_ID = "3fe39976abb8";

export const FIXTURE_PATTERNS: Record<string, PatternsResponse> = {
  "0.6": {
    "job_id": "3fe39976abb8",
    "similarity_threshold": 0.6,
    "top_k": null,
    "total_patterns": 10,
    "metadata": {
      "control_mode": "exact",
      "resolved_min_support": {
        "test": 2,
        "control": null
      },
      "test_size": 5,
      "control_size": 5,
      "warnings": []
    },
    "rows": [
      {
        "pattern": [
          "e2",
          "e3"
        ],
        "test_support": 3,
        "control_support": 0,
        "precision": 1.0,
        "recall": 0.6,
        "f1": 0.7499999999999999,
        "test_trace_ids": [
          "t1",
          "t2",
          "t3"
        ],
        "cluster_size": 7,
        "cluster_members": [
          [
            "e2",
            "e3"
          ],
          [
            "e2"
          ],
          [
            "e3"
          ],
          [
            "e1",
            "e2",
            "e3"
          ],
          [
            "e1",
            "e2"
          ],
          [
            "e1",
            "e3"
          ],
          [
            "e1"
          ]
        ]
      },
      {
        "pattern": [
          "e5",
          "e7"
        ],
        "test_support": 2,
        "control_support": 0,
        "precision": 1.0,
        "recall": 0.4,
        "f1": 0.5714285714285715,
        "test_trace_ids": [
          "t4",
          "t5"
        ],
        "cluster_size": 3,
        "cluster_members": [
          [
            "e5",
            "e7"
          ],
          [
            "e5"
          ],
          [
            "e7"
          ]
        ]
      }
    ]
  },
  "0.9": {
    "job_id": "3fe39976abb8",
    "similarity_threshold": 0.9,
    "top_k": null,
    "total_patterns": 10,
    "metadata": {
      "control_mode": "exact",
      "resolved_min_support": {
        "test": 2,
        "control": null
      },
      "test_size": 5,
      "control_size": 5,
      "warnings": []
    },
    "rows": [
      {
        "pattern": [
          "e2",
          "e3"
        ],
        "test_support": 3,
        "control_support": 0,
        "precision": 1.0,
        "recall": 0.6,
        "f1": 0.7499999999999999,
        "test_trace_ids": [
          "t1",
          "t2",
          "t3"
        ],
        "cluster_size": 3,
        "cluster_members": [
          [
            "e2",
            "e3"
          ],
          [
            "e2"
          ],
          [
            "e3"
          ]
        ]
      },
      {
        "pattern": [
          "e1",
          "e2",
          "e3"
        ],
        "test_support": 2,
        "control_support": 0,
        "precision": 1.0,
        "recall": 0.4,
        "f1": 0.5714285714285715,
        "test_trace_ids": [
          "t1",
          "t2"
        ],
        "cluster_size": 4,
        "cluster_members": [
          [
            "e1",
            "e2",
            "e3"
          ],
          [
            "e1",
            "e2"
          ],
          [
            "e1",
            "e3"
          ],
          [
            "e1"
          ]
        ]
      },
      {
        "pattern": [
          "e5",
          "e7"
        ],
        "test_support": 2,
        "control_support": 0,
        "precision": 1.0,
        "recall": 0.4,
        "f1": 0.5714285714285715,
        "test_trace_ids": [
          "t4",
          "t5"
        ],
        "cluster_size": 3,
        "cluster_members": [
          [
            "e5",
            "e7"
          ],
          [
            "e5"
          ],
          [
            "e7"
          ]
        ]
      }
    ]
  },
  "1.0": {
    "job_id": "3fe39976abb8",
    "similarity_threshold": 1.0,
    "top_k": null,
    "total_patterns": 10,
    "metadata": {
      "control_mode": "exact",
      "resolved_min_support": {
        "test": 2,
        "control": null
      },
      "test_size": 5,
      "control_size": 5,
      "warnings": []
    },
    "rows": [
      {
        "pattern": [
          "e2",
          "e3"
        ],
        "test_support": 3,
        "control_support": 0,
        "precision": 1.0,
        "recall": 0.6,
        "f1": 0.7499999999999999,
        "test_trace_ids": [
          "t1",
          "t2",
          "t3"
        ],
        "cluster_size": 3,
        "cluster_members": [
          [
            "e2",
            "e3"
          ],
          [
            "e2"
          ],
          [
            "e3"
          ]
        ]
      },
      {
        "pattern": [
          "e1",
          "e2",
          "e3"
        ],
        "test_support": 2,
        "control_support": 0,
        "precision": 1.0,
        "recall": 0.4,
        "f1": 0.5714285714285715,
        "test_trace_ids": [
          "t1",
          "t2"
        ],
        "cluster_size": 4,
        "cluster_members": [
          [
            "e1",
            "e2",
            "e3"
          ],
          [
            "e1",
            "e2"
          ],
          [
            "e1",
            "e3"
          ],
          [
            "e1"
          ]
        ]
      },
      {
        "pattern": [
          "e5",
          "e7"
        ],
        "test_support": 2,
        "control_support": 0,
        "precision": 1.0,
        "recall": 0.4,
        "f1": 0.5714285714285715,
        "test_trace_ids": [
          "t4",
          "t5"
        ],
        "cluster_size": 3,
        "cluster_members": [
          [
            "e5",
            "e7"
          ],
          [
            "e5"
          ],
          [
            "e7"
          ]
        ]
      }
    ]
  }
};

export const FIXTURE_JOB_DONE: JobStatus = {
  job_id: FIXTURE_JOB_ID,
  state: "done",
  config: { min_support: 2, max_len: 5, similarity_threshold: 0.9, control_mode: "exact" },
  error: null,
  timings: { discretize: 0.0001, ingest: 0.0002, mine_and_rank: 0.0015, dedupe: 0.0003 },
  warnings: [],
};

export const FIXTURE_TEST_RECORDS = [
  { id: "t1", events: ["e1", "e2", "e3", "e4"] },
  { id: "t2", events: ["e1", "e2", "e3"] },
  { id: "t3", events: ["e2", "e3"] },
  { id: "t4", events: ["e5", "e6", "e7", "e8"] },
  { id: "t5", events: ["e5", "e7"] },
];

export const FIXTURE_CONTROL_RECORDS = [
  { id: "t6", events: ["e1", "e2", "e4"] },
  { id: "t7", events: ["e1", "e3", "e4"] },
  { id: "t8", events: ["e1", "e3"] },
  { id: "t9", events: ["e6", "e7"] },
  { id: "t10", events: ["e5", "e6", "e8"] },
];
