/**
 * Service payloads captured verbatim from the demo service. Regenerate
 * with:
 *
 *     python3 frontend/tests/capture_fixtures.py
 */

import type { StepRef } from "../src/steps.js";
import type {
  BrowsePayloadJson,
  DatabaseListJson,
  EditOpJson,
  ErrorDetailJson,
  HoverPayloadJson,
  SessionCreatedJson,
  SessionStateJson,
  StepResultJson,
} from "../src/types.js";

export interface HoverCase {
  ref: StepRef;
  offset: number;
  payload: HoverPayloadJson;
}

export interface CapturedError {
  status: number;
  body: { detail: ErrorDetailJson };
}

export const DATABASES: DatabaseListJson = {
  "databases": [
    {
      "id": "course_teach",
      "tables": [
        "teacher"
      ]
    },
    {
      "id": "flight_2",
      "tables": [
        "AIRLINES",
        "AIRPORTS",
        "FLIGHTS"
      ]
    },
    {
      "id": "student_transcripts_tracking",
      "tables": [
        "Addresses",
        "Students",
        "Transcript_Contents"
      ]
    },
    {
      "id": "car_1",
      "tables": [
        "COUNTRIES",
        "CAR_MAKERS",
        "CARS_DATA",
        "CAR_NAMES"
      ]
    },
    {
      "id": "battle_death",
      "tables": [
        "battle",
        "ship",
        "death"
      ]
    },
    {
      "id": "dog_kennels",
      "tables": [
        "Owners",
        "Dogs",
        "Treatments"
      ]
    },
    {
      "id": "voter_1",
      "tables": [
        "area_code_state",
        "votes"
      ]
    },
    {
      "id": "flight_prices",
      "tables": [
        "flight"
      ]
    },
    {
      "id": "travel_mobility",
      "tables": [
        "travel",
        "flight"
      ]
    }
  ]
};

export const BROWSE_PAGE: BrowsePayloadJson = {
  "table": "travel",
  "page": 1,
  "page_size": 5,
  "result": {
    "columns": [
      {
        "name": "id",
        "affinity": "integer"
      },
      {
        "name": "destination",
        "affinity": "text"
      },
      {
        "name": "airport_code",
        "affinity": "text"
      },
      {
        "name": "airport_name",
        "affinity": "text"
      }
    ],
    "rows": [
      [
        1,
        "Honolulu",
        "LAX",
        "Los Angeles International"
      ],
      [
        2,
        "Honolulu",
        "JFK",
        "John F Kennedy International"
      ],
      [
        3,
        "Paris",
        "JFK",
        "John F Kennedy International"
      ],
      [
        4,
        "Honolulu",
        "LAX",
        "Los Angeles International"
      ],
      [
        5,
        "Tokyo",
        "SFO",
        "San Francisco International"
      ]
    ],
    "truncated": true,
    "row_cap": 5,
    "elapsed_ms": 0.05712700112781022
  }
};

export const CREATED: SessionCreatedJson = {
  "session_id": "b22188a0e54b456498d3873586559769",
  "database_id": "travel_mobility"
};

export const QUESTION: string = "Which airport has the most flights to the most popular destination in the first quarter of 2022?";

export const ASKED: SessionStateJson = {
  "session_id": "b22188a0e54b456498d3873586559769",
  "database_id": "travel_mobility",
  "question": "Which airport has the most flights to the most popular destination in the first quarter of 2022?",
  "sql": "SELECT travel.airport_name FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month = \"January\" GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
  "plan": {
    "sql": "SELECT travel.airport_name FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month = \"January\" GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
    "blocks": [
      {
        "unit_index": 0,
        "header": "Start the first query",
        "steps": [
          {
            "unit_index": 0,
            "step_index": 1,
            "clause_kind": "join",
            "text": "Merge data in table flight and table travel.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 20,
                "end": 26,
                "target": {
                  "kind": "table",
                  "table": "flight"
                }
              },
              {
                "start": 37,
                "end": 43,
                "target": {
                  "kind": "table",
                  "table": "travel"
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 2,
            "clause_kind": "where",
            "text": "Keep the records where month is January.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 23,
                "end": 28,
                "target": {
                  "kind": "column",
                  "table": "flight",
                  "column": "month"
                }
              },
              {
                "start": 32,
                "end": 39,
                "target": {
                  "kind": "value",
                  "value": "January",
                  "column": {
                    "table": "flight",
                    "column": "month"
                  }
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 3,
            "clause_kind": "group_by",
            "text": "Split the data into groups based on the destination.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 40,
                "end": 51,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 4,
            "clause_kind": "order_limit",
            "text": "Sort the groups based on the number of records in descending order, and return the first record.",
            "origin": "generated",
            "user_text": null,
            "spans": []
          },
          {
            "unit_index": 0,
            "step_index": 5,
            "clause_kind": "select",
            "text": "Return the destination.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 11,
                "end": 22,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              }
            ]
          }
        ]
      },
      {
        "unit_index": 1,
        "header": "Start the second query",
        "steps": [
          {
            "unit_index": 1,
            "step_index": 1,
            "clause_kind": "from",
            "text": "In table travel.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 9,
                "end": 15,
                "target": {
                  "kind": "table",
                  "table": "travel"
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 2,
            "clause_kind": "where",
            "text": "Keep the records where the destination is the result of the first query.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 27,
                "end": 38,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              },
              {
                "start": 42,
                "end": 71,
                "target": {
                  "kind": "subquery_result",
                  "unit_index": 0
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 3,
            "clause_kind": "group_by",
            "text": "Split the data into groups based on the airport code.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 40,
                "end": 52,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "airport_code"
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 4,
            "clause_kind": "order_limit",
            "text": "Sort the groups based on the number of records in descending order, and return the first record.",
            "origin": "generated",
            "user_text": null,
            "spans": []
          },
          {
            "unit_index": 1,
            "step_index": 5,
            "clause_kind": "select",
            "text": "Return the airport name.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 11,
                "end": 23,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "airport_name"
                }
              }
            ]
          }
        ]
      }
    ]
  },
  "digest": "b918cbb83a4176f6dfea8f718740c8be83d60bcae5ed6293f354da88c4aa5ddf",
  "can_undo": false,
  "can_redo": false
};

export const FINAL_REF: StepRef = {
  "unitIndex": 1,
  "stepIndex": 5
};

export const WHERE_REF: StepRef = {
  "unitIndex": 0,
  "stepIndex": 2
};

export const FINAL_STEP_RESULT: StepResultJson = {
  "temp_sql": "SELECT travel.airport_name FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month = \"January\" GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
  "synthesized_select": false,
  "result": {
    "columns": [
      {
        "name": "airport_name",
        "affinity": "text"
      }
    ],
    "rows": [
      [
        "Los Angeles International"
      ]
    ],
    "truncated": false,
    "row_cap": 1000,
    "elapsed_ms": 0.41764500019780826
  }
};

export const WHERE_STEP_RESULT: StepResultJson = {
  "temp_sql": "SELECT * FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month = \"January\"",
  "synthesized_select": true,
  "result": {
    "columns": [
      {
        "name": "id",
        "affinity": "integer"
      },
      {
        "name": "travel_id",
        "affinity": "integer"
      },
      {
        "name": "month",
        "affinity": "text"
      },
      {
        "name": "year",
        "affinity": "integer"
      },
      {
        "name": "price",
        "affinity": "integer"
      },
      {
        "name": "id",
        "affinity": "integer"
      },
      {
        "name": "destination",
        "affinity": "text"
      },
      {
        "name": "airport_code",
        "affinity": "text"
      },
      {
        "name": "airport_name",
        "affinity": "text"
      }
    ],
    "rows": [
      [
        1,
        1,
        "January",
        2021,
        420,
        1,
        "Honolulu",
        "LAX",
        "Los Angeles International"
      ],
      [
        2,
        1,
        "January",
        2022,
        380,
        1,
        "Honolulu",
        "LAX",
        "Los Angeles International"
      ],
      [
        3,
        2,
        "January",
        2022,
        350,
        2,
        "Honolulu",
        "JFK",
        "John F Kennedy International"
      ],
      [
        4,
        6,
        "January",
        2021,
        410,
        6,
        "Paris",
        "CDG",
        "Charles de Gaulle"
      ]
    ],
    "truncated": false,
    "row_cap": 1000,
    "elapsed_ms": 0.08349199924850836
  }
};

export const GROUP_REF: StepRef = {
  "unitIndex": 1,
  "stepIndex": 3
};

export const GROUP_STEP_RESULT: StepResultJson = {
  "temp_sql": "SELECT travel.airport_code , COUNT (*) AS record_count FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month = \"January\" GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code",
  "synthesized_select": true,
  "result": {
    "columns": [
      {
        "name": "airport_code",
        "affinity": "text"
      },
      {
        "name": "record_count",
        "affinity": "integer"
      }
    ],
    "rows": [
      [
        "JFK",
        1
      ],
      [
        "LAX",
        2
      ],
      [
        "SFO",
        1
      ]
    ],
    "truncated": false,
    "row_cap": 1000,
    "elapsed_ms": 0.12464600149542093
  }
};

export const HOVER_CASES: Record<string, HoverCase> = {
  "table": {
    "ref": {
      "unitIndex": 0,
      "stepIndex": 1
    },
    "offset": 20,
    "payload": {
      "target": {
        "kind": "table",
        "table": "flight"
      }
    }
  },
  "column": {
    "ref": {
      "unitIndex": 0,
      "stepIndex": 2
    },
    "offset": 23,
    "payload": {
      "target": {
        "kind": "column",
        "table": "flight",
        "column": "month"
      }
    }
  },
  "value": {
    "ref": {
      "unitIndex": 0,
      "stepIndex": 2
    },
    "offset": 32,
    "payload": {
      "target": null
    }
  },
  "subquery_result": {
    "ref": {
      "unitIndex": 1,
      "stepIndex": 2
    },
    "offset": 42,
    "payload": {
      "target": {
        "kind": "subquery_result",
        "unit_index": 0
      }
    }
  }
};

export const NONSENSE_EDIT: EditOpJson = {
  "kind": "update",
  "unit_index": 0,
  "step_index": 2,
  "new_text": "Keep the records where the frobnicator is purple."
};

export const REJECTED_EDIT: CapturedError = {
  "status": 422,
  "body": {
    "detail": {
      "type": "BackendRefusal",
      "message": "no filter column recognized"
    }
  }
};

export const WRONG_KIND_EDIT: EditOpJson = {
  "kind": "update",
  "unit_index": 0,
  "step_index": 2,
  "new_text": "Return the destination."
};

export const CONFLICTED_EDIT: CapturedError = {
  "status": 409,
  "body": {
    "detail": {
      "type": "ConflictError",
      "message": "the new sentence describes a select step, but the edited step is a where step"
    }
  }
};

export const REPAIR_EDITS: EditOpJson[] = [
  {
    "kind": "update",
    "unit_index": 0,
    "step_index": 2,
    "new_text": "Keep the records where month is between January and March."
  },
  {
    "kind": "add",
    "unit_index": 0,
    "step_index": 3,
    "new_text": "Make sure the year in 2022."
  }
];

export const EDITED: SessionStateJson = {
  "session_id": "b22188a0e54b456498d3873586559769",
  "database_id": "travel_mobility",
  "question": "Which airport has the most flights to the most popular destination in the first quarter of 2022?",
  "sql": "SELECT travel.airport_name FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month BETWEEN \"January\" AND \"March\" AND flight.year = 2022 GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
  "plan": {
    "sql": "SELECT travel.airport_name FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month BETWEEN \"January\" AND \"March\" AND flight.year = 2022 GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
    "blocks": [
      {
        "unit_index": 0,
        "header": "Start the first query",
        "steps": [
          {
            "unit_index": 0,
            "step_index": 1,
            "clause_kind": "join",
            "text": "Merge data in table flight and table travel.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 20,
                "end": 26,
                "target": {
                  "kind": "table",
                  "table": "flight"
                }
              },
              {
                "start": 37,
                "end": 43,
                "target": {
                  "kind": "table",
                  "table": "travel"
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 2,
            "clause_kind": "where",
            "text": "Keep the records where month is between January and March and year is 2022.",
            "origin": "user_added",
            "user_text": "Make sure the year in 2022.",
            "spans": [
              {
                "start": 23,
                "end": 28,
                "target": {
                  "kind": "column",
                  "table": "flight",
                  "column": "month"
                }
              },
              {
                "start": 40,
                "end": 47,
                "target": {
                  "kind": "value",
                  "value": "January",
                  "column": {
                    "table": "flight",
                    "column": "month"
                  }
                }
              },
              {
                "start": 52,
                "end": 57,
                "target": {
                  "kind": "value",
                  "value": "March",
                  "column": {
                    "table": "flight",
                    "column": "month"
                  }
                }
              },
              {
                "start": 62,
                "end": 66,
                "target": {
                  "kind": "column",
                  "table": "flight",
                  "column": "year"
                }
              },
              {
                "start": 70,
                "end": 74,
                "target": {
                  "kind": "value",
                  "value": 2022,
                  "column": {
                    "table": "flight",
                    "column": "year"
                  }
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 3,
            "clause_kind": "group_by",
            "text": "Split the data into groups based on the destination.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 40,
                "end": 51,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 4,
            "clause_kind": "order_limit",
            "text": "Sort the groups based on the number of records in descending order, and return the first record.",
            "origin": "generated",
            "user_text": null,
            "spans": []
          },
          {
            "unit_index": 0,
            "step_index": 5,
            "clause_kind": "select",
            "text": "Return the destination.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 11,
                "end": 22,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              }
            ]
          }
        ]
      },
      {
        "unit_index": 1,
        "header": "Start the second query",
        "steps": [
          {
            "unit_index": 1,
            "step_index": 1,
            "clause_kind": "from",
            "text": "In table travel.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 9,
                "end": 15,
                "target": {
                  "kind": "table",
                  "table": "travel"
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 2,
            "clause_kind": "where",
            "text": "Keep the records where the destination is the result of the first query.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 27,
                "end": 38,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              },
              {
                "start": 42,
                "end": 71,
                "target": {
                  "kind": "subquery_result",
                  "unit_index": 0
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 3,
            "clause_kind": "group_by",
            "text": "Split the data into groups based on the airport code.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 40,
                "end": 52,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "airport_code"
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 4,
            "clause_kind": "order_limit",
            "text": "Sort the groups based on the number of records in descending order, and return the first record.",
            "origin": "generated",
            "user_text": null,
            "spans": []
          },
          {
            "unit_index": 1,
            "step_index": 5,
            "clause_kind": "select",
            "text": "Return the airport name.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 11,
                "end": 23,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "airport_name"
                }
              }
            ]
          }
        ]
      }
    ]
  },
  "digest": "d2ec59349a3c2bd88a742c9093d6b123ebbfe09f96e3bdbb3c89575a52c5db1c",
  "can_undo": true,
  "can_redo": false
};

export const EDITED_FINAL_REF: StepRef = {
  "unitIndex": 1,
  "stepIndex": 5
};

export const EDITED_FINAL_RESULT: StepResultJson = {
  "temp_sql": "SELECT travel.airport_name FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month BETWEEN \"January\" AND \"March\" AND flight.year = 2022 GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
  "synthesized_select": false,
  "result": {
    "columns": [
      {
        "name": "airport_name",
        "affinity": "text"
      }
    ],
    "rows": [
      [
        "Charles de Gaulle"
      ]
    ],
    "truncated": false,
    "row_cap": 1000,
    "elapsed_ms": 0.2373669994994998
  }
};

export const UNDONE: SessionStateJson = {
  "session_id": "b22188a0e54b456498d3873586559769",
  "database_id": "travel_mobility",
  "question": "Which airport has the most flights to the most popular destination in the first quarter of 2022?",
  "sql": "SELECT travel.airport_name FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month = \"January\" GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
  "plan": {
    "sql": "SELECT travel.airport_name FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month = \"January\" GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
    "blocks": [
      {
        "unit_index": 0,
        "header": "Start the first query",
        "steps": [
          {
            "unit_index": 0,
            "step_index": 1,
            "clause_kind": "join",
            "text": "Merge data in table flight and table travel.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 20,
                "end": 26,
                "target": {
                  "kind": "table",
                  "table": "flight"
                }
              },
              {
                "start": 37,
                "end": 43,
                "target": {
                  "kind": "table",
                  "table": "travel"
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 2,
            "clause_kind": "where",
            "text": "Keep the records where month is January.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 23,
                "end": 28,
                "target": {
                  "kind": "column",
                  "table": "flight",
                  "column": "month"
                }
              },
              {
                "start": 32,
                "end": 39,
                "target": {
                  "kind": "value",
                  "value": "January",
                  "column": {
                    "table": "flight",
                    "column": "month"
                  }
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 3,
            "clause_kind": "group_by",
            "text": "Split the data into groups based on the destination.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 40,
                "end": 51,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 4,
            "clause_kind": "order_limit",
            "text": "Sort the groups based on the number of records in descending order, and return the first record.",
            "origin": "generated",
            "user_text": null,
            "spans": []
          },
          {
            "unit_index": 0,
            "step_index": 5,
            "clause_kind": "select",
            "text": "Return the destination.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 11,
                "end": 22,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              }
            ]
          }
        ]
      },
      {
        "unit_index": 1,
        "header": "Start the second query",
        "steps": [
          {
            "unit_index": 1,
            "step_index": 1,
            "clause_kind": "from",
            "text": "In table travel.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 9,
                "end": 15,
                "target": {
                  "kind": "table",
                  "table": "travel"
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 2,
            "clause_kind": "where",
            "text": "Keep the records where the destination is the result of the first query.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 27,
                "end": 38,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              },
              {
                "start": 42,
                "end": 71,
                "target": {
                  "kind": "subquery_result",
                  "unit_index": 0
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 3,
            "clause_kind": "group_by",
            "text": "Split the data into groups based on the airport code.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 40,
                "end": 52,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "airport_code"
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 4,
            "clause_kind": "order_limit",
            "text": "Sort the groups based on the number of records in descending order, and return the first record.",
            "origin": "generated",
            "user_text": null,
            "spans": []
          },
          {
            "unit_index": 1,
            "step_index": 5,
            "clause_kind": "select",
            "text": "Return the airport name.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 11,
                "end": 23,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "airport_name"
                }
              }
            ]
          }
        ]
      }
    ]
  },
  "digest": "b918cbb83a4176f6dfea8f718740c8be83d60bcae5ed6293f354da88c4aa5ddf",
  "can_undo": false,
  "can_redo": true
};

export const UNDO_BOUNDARY: CapturedError = {
  "status": 409,
  "body": {
    "detail": {
      "type": "NothingToUndo",
      "message": "already at the original query"
    }
  }
};

export const REDONE: SessionStateJson = {
  "session_id": "b22188a0e54b456498d3873586559769",
  "database_id": "travel_mobility",
  "question": "Which airport has the most flights to the most popular destination in the first quarter of 2022?",
  "sql": "SELECT travel.airport_name FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month BETWEEN \"January\" AND \"March\" AND flight.year = 2022 GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
  "plan": {
    "sql": "SELECT travel.airport_name FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month BETWEEN \"January\" AND \"March\" AND flight.year = 2022 GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
    "blocks": [
      {
        "unit_index": 0,
        "header": "Start the first query",
        "steps": [
          {
            "unit_index": 0,
            "step_index": 1,
            "clause_kind": "join",
            "text": "Merge data in table flight and table travel.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 20,
                "end": 26,
                "target": {
                  "kind": "table",
                  "table": "flight"
                }
              },
              {
                "start": 37,
                "end": 43,
                "target": {
                  "kind": "table",
                  "table": "travel"
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 2,
            "clause_kind": "where",
            "text": "Keep the records where month is between January and March and year is 2022.",
            "origin": "user_added",
            "user_text": "Make sure the year in 2022.",
            "spans": [
              {
                "start": 23,
                "end": 28,
                "target": {
                  "kind": "column",
                  "table": "flight",
                  "column": "month"
                }
              },
              {
                "start": 40,
                "end": 47,
                "target": {
                  "kind": "value",
                  "value": "January",
                  "column": {
                    "table": "flight",
                    "column": "month"
                  }
                }
              },
              {
                "start": 52,
                "end": 57,
                "target": {
                  "kind": "value",
                  "value": "March",
                  "column": {
                    "table": "flight",
                    "column": "month"
                  }
                }
              },
              {
                "start": 62,
                "end": 66,
                "target": {
                  "kind": "column",
                  "table": "flight",
                  "column": "year"
                }
              },
              {
                "start": 70,
                "end": 74,
                "target": {
                  "kind": "value",
                  "value": 2022,
                  "column": {
                    "table": "flight",
                    "column": "year"
                  }
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 3,
            "clause_kind": "group_by",
            "text": "Split the data into groups based on the destination.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 40,
                "end": 51,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 4,
            "clause_kind": "order_limit",
            "text": "Sort the groups based on the number of records in descending order, and return the first record.",
            "origin": "generated",
            "user_text": null,
            "spans": []
          },
          {
            "unit_index": 0,
            "step_index": 5,
            "clause_kind": "select",
            "text": "Return the destination.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 11,
                "end": 22,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              }
            ]
          }
        ]
      },
      {
        "unit_index": 1,
        "header": "Start the second query",
        "steps": [
          {
            "unit_index": 1,
            "step_index": 1,
            "clause_kind": "from",
            "text": "In table travel.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 9,
                "end": 15,
                "target": {
                  "kind": "table",
                  "table": "travel"
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 2,
            "clause_kind": "where",
            "text": "Keep the records where the destination is the result of the first query.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 27,
                "end": 38,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              },
              {
                "start": 42,
                "end": 71,
                "target": {
                  "kind": "subquery_result",
                  "unit_index": 0
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 3,
            "clause_kind": "group_by",
            "text": "Split the data into groups based on the airport code.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 40,
                "end": 52,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "airport_code"
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 4,
            "clause_kind": "order_limit",
            "text": "Sort the groups based on the number of records in descending order, and return the first record.",
            "origin": "generated",
            "user_text": null,
            "spans": []
          },
          {
            "unit_index": 1,
            "step_index": 5,
            "clause_kind": "select",
            "text": "Return the airport name.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 11,
                "end": 23,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "airport_name"
                }
              }
            ]
          }
        ]
      }
    ]
  },
  "digest": "d2ec59349a3c2bd88a742c9093d6b123ebbfe09f96e3bdbb3c89575a52c5db1c",
  "can_undo": true,
  "can_redo": false
};

export const MIXED_EDITS: EditOpJson[] = [
  {
    "kind": "update",
    "unit_index": 1,
    "step_index": 5,
    "new_text": "Return the airport code."
  },
  {
    "kind": "add",
    "unit_index": 0,
    "step_index": 6,
    "new_text": "Make sure the year in 2022."
  }
];

export const MIXED: SessionStateJson = {
  "session_id": "6ecc80dbe1ca426eb7a8c09bd167299a",
  "database_id": "travel_mobility",
  "question": "Which airport has the most flights to the most popular destination in the first quarter of 2022?",
  "sql": "SELECT travel.airport_code FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month = \"January\" AND flight.year = 2022 GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
  "plan": {
    "sql": "SELECT travel.airport_code FROM travel WHERE travel.destination = (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id WHERE flight.month = \"January\" AND flight.year = 2022 GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1) GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1",
    "blocks": [
      {
        "unit_index": 0,
        "header": "Start the first query",
        "steps": [
          {
            "unit_index": 0,
            "step_index": 1,
            "clause_kind": "join",
            "text": "Merge data in table flight and table travel.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 20,
                "end": 26,
                "target": {
                  "kind": "table",
                  "table": "flight"
                }
              },
              {
                "start": 37,
                "end": 43,
                "target": {
                  "kind": "table",
                  "table": "travel"
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 2,
            "clause_kind": "where",
            "text": "Keep the records where month is January and year is 2022.",
            "origin": "user_added",
            "user_text": "Make sure the year in 2022.",
            "spans": [
              {
                "start": 23,
                "end": 28,
                "target": {
                  "kind": "column",
                  "table": "flight",
                  "column": "month"
                }
              },
              {
                "start": 32,
                "end": 39,
                "target": {
                  "kind": "value",
                  "value": "January",
                  "column": {
                    "table": "flight",
                    "column": "month"
                  }
                }
              },
              {
                "start": 44,
                "end": 48,
                "target": {
                  "kind": "column",
                  "table": "flight",
                  "column": "year"
                }
              },
              {
                "start": 52,
                "end": 56,
                "target": {
                  "kind": "value",
                  "value": 2022,
                  "column": {
                    "table": "flight",
                    "column": "year"
                  }
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 3,
            "clause_kind": "group_by",
            "text": "Split the data into groups based on the destination.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 40,
                "end": 51,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              }
            ]
          },
          {
            "unit_index": 0,
            "step_index": 4,
            "clause_kind": "order_limit",
            "text": "Sort the groups based on the number of records in descending order, and return the first record.",
            "origin": "generated",
            "user_text": null,
            "spans": []
          },
          {
            "unit_index": 0,
            "step_index": 5,
            "clause_kind": "select",
            "text": "Return the destination.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 11,
                "end": 22,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              }
            ]
          }
        ]
      },
      {
        "unit_index": 1,
        "header": "Start the second query",
        "steps": [
          {
            "unit_index": 1,
            "step_index": 1,
            "clause_kind": "from",
            "text": "In table travel.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 9,
                "end": 15,
                "target": {
                  "kind": "table",
                  "table": "travel"
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 2,
            "clause_kind": "where",
            "text": "Keep the records where the destination is the result of the first query.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 27,
                "end": 38,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "destination"
                }
              },
              {
                "start": 42,
                "end": 71,
                "target": {
                  "kind": "subquery_result",
                  "unit_index": 0
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 3,
            "clause_kind": "group_by",
            "text": "Split the data into groups based on the airport code.",
            "origin": "generated",
            "user_text": null,
            "spans": [
              {
                "start": 40,
                "end": 52,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "airport_code"
                }
              }
            ]
          },
          {
            "unit_index": 1,
            "step_index": 4,
            "clause_kind": "order_limit",
            "text": "Sort the groups based on the number of records in descending order, and return the first record.",
            "origin": "generated",
            "user_text": null,
            "spans": []
          },
          {
            "unit_index": 1,
            "step_index": 5,
            "clause_kind": "select",
            "text": "Return the airport code.",
            "origin": "user_edited",
            "user_text": "Return the airport code.",
            "spans": [
              {
                "start": 11,
                "end": 23,
                "target": {
                  "kind": "column",
                  "table": "travel",
                  "column": "airport_code"
                }
              }
            ]
          }
        ]
      }
    ]
  },
  "digest": "0e46fc095db2d7df97edaa6b3fbb1065f41f5849bc15884c447ea9ca577c60e2",
  "can_undo": true,
  "can_redo": false
};
