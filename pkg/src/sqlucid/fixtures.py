"""Bundled demo databases and the task corpus used by tests and the CLI.

Each database is defined by literal DDL and rows so builds are fully
deterministic.  Expected results for corpus tasks are computed by executing
the ground-truth SQL directly with :mod:`sqlite3` at build time, keeping the
reference answers independent of this package's own query machinery.

The data is shaped so that every ``ORDER BY ... LIMIT 1`` task has a unique
winner; otherwise expected results would depend on tie-breaking.
"""
from __future__ import annotations

import json
import sqlite3
from dataclasses import dataclass
from pathlib import Path


def _flights_rows() -> list[tuple]:
    # United gets 210 flights so a HAVING COUNT(*) < 200 filter bites.
    rows = []
    airports = [("LAX", "HNL"), ("HNL", "BOS"), ("BOS", "LAX")]
    for flight_no in range(1, 211):
        src, dest = airports[flight_no % len(airports)]
        rows.append((1, flight_no, src, dest))
    for flight_no, (src, dest) in enumerate([("LAX", "HNL"), ("HNL", "LAX"), ("BOS", "HNL")], 301):
        rows.append((2, flight_no, src, dest))
    for flight_no, (src, dest) in enumerate(
        [("LAX", "BOS"), ("BOS", "LAX"), ("HNL", "BOS"), ("LAX", "HNL"), ("BOS", "HNL")], 401
    ):
        rows.append((3, flight_no, src, dest))
    return rows


DATABASES: dict[str, dict] = {
    "course_teach": {
        "ddl": [
            "CREATE TABLE teacher (Teacher_ID INTEGER PRIMARY KEY, Name TEXT, Age INTEGER,"
            " Hometown TEXT)",
        ],
        "rows": {
            "teacher": [
                (1, "Joseph Huts", 32, "Blackrod urban district"),
                (2, "Gustaaf Deloor", 29, "little lever urban district"),
                (3, "Vicente Carretero", 26, "little lever urban district"),
                (4, "John Deloor", 33, "Farnworth municipal borough"),
                (5, "Kearsley Brown", 45, "Kearsley urban district"),
            ],
        },
    },
    "flight_2": {
        "ddl": [
            "CREATE TABLE AIRLINES (uid INTEGER PRIMARY KEY, Airline TEXT, Abbreviation TEXT,"
            " Country TEXT)",
            "CREATE TABLE AIRPORTS (City TEXT, AirportCode TEXT PRIMARY KEY, AirportName TEXT,"
            " Country TEXT)",
            "CREATE TABLE FLIGHTS (Airline INTEGER, FlightNo INTEGER, SourceAirport TEXT,"
            " DestAirport TEXT,"
            " FOREIGN KEY (Airline) REFERENCES AIRLINES(uid),"
            " FOREIGN KEY (SourceAirport) REFERENCES AIRPORTS(AirportCode),"
            " FOREIGN KEY (DestAirport) REFERENCES AIRPORTS(AirportCode))",
        ],
        "rows": {
            "AIRLINES": [
                (1, "United Airlines", "UAL", "USA"),
                (2, "JetBlue Airways", "JetBlue", "USA"),
                (3, "Delta Air Lines", "Delta", "USA"),
            ],
            "AIRPORTS": [
                ("Los Angeles", "LAX", "Los Angeles International", "USA"),
                ("Honolulu", "HNL", "Honolulu International", "USA"),
                ("Boston", "BOS", "Logan International", "USA"),
            ],
            "FLIGHTS": _flights_rows(),
        },
    },
    "student_transcripts_tracking": {
        "ddl": [
            "CREATE TABLE Addresses (address_id INTEGER PRIMARY KEY, line_1 TEXT, city TEXT,"
            " country TEXT)",
            "CREATE TABLE Students (student_id INTEGER PRIMARY KEY, first_name TEXT,"
            " middle_name TEXT, last_name TEXT, permanent_address_id INTEGER,"
            " current_address_id INTEGER, cell_mobile_number TEXT, date_left TEXT,"
            " other_student_details TEXT,"
            " FOREIGN KEY (permanent_address_id) REFERENCES Addresses(address_id),"
            " FOREIGN KEY (current_address_id) REFERENCES Addresses(address_id))",
            "CREATE TABLE Transcript_Contents (student_course_id INTEGER, transcript_id INTEGER)",
        ],
        "rows": {
            "Addresses": [
                (1, "1 Pine St", "Port-au-Prince", "haiti"),
                (2, "2 Oak Ave", "Boston", "united states"),
                (3, "3 Elm Rd", "Cap-Haitien", "haiti"),
                (4, "4 Birch Ln", "Chicago", "united states"),
            ],
            "Students": [
                (1, "Emma", "Rose", "Wilson", 1, 2, "555-0100", "2021-06-30", "first class"),
                (2, "Liam", "James", "Carter", 2, 2, "09700166582", "2019-05-14", "monitor"),
                (3, "Noah", "Lee", "Brooks", 4, 4, "555-0111", "2018-03-02", "abide"),
                (4, "Olivia", "May", "Hughes", 2, 3, "555-0122", "2022-01-20", "zero tolerance"),
            ],
            "Transcript_Contents": [(101, 1), (101, 2), (101, 3), (102, 1), (103, 2)],
        },
    },
    "car_1": {
        "ddl": [
            "CREATE TABLE COUNTRIES (CountryId INTEGER PRIMARY KEY, CountryName TEXT,"
            " Continent TEXT)",
            "CREATE TABLE CAR_MAKERS (Id INTEGER PRIMARY KEY, Maker TEXT, FullName TEXT,"
            " Country INTEGER, FOREIGN KEY (Country) REFERENCES COUNTRIES(CountryId))",
            "CREATE TABLE CARS_DATA (Id INTEGER PRIMARY KEY, MPG REAL, Cylinders INTEGER,"
            " Edispl REAL, Horsepower INTEGER, Weight INTEGER, Accelerate REAL, Year INTEGER)",
            "CREATE TABLE CAR_NAMES (MakeId INTEGER PRIMARY KEY, Model TEXT, Make TEXT,"
            " FOREIGN KEY (MakeId) REFERENCES CARS_DATA(Id))",
        ],
        "rows": {
            "COUNTRIES": [
                (1, "usa", "north america"),
                (2, "germany", "europe"),
                (3, "japan", "asia"),
            ],
            "CAR_MAKERS": [
                (1, "ford", "Ford Motor Company", 1),
                (2, "bmw", "BMW AG", 2),
                (3, "toyota", "Toyota Motor Corp", 3),
                (4, "chevrolet", "Chevrolet Division", 1),
            ],
            "CARS_DATA": [
                (1, 18.0, 8, 307.0, 130, 3504, 12.0, 1970),
                (2, 26.0, 4, 97.0, 46, 1835, 20.5, 1970),
                (3, 33.0, 3, 70.0, 97, 2330, 13.5, 1972),
                (4, 21.0, 3, 80.0, 110, 2720, 13.5, 1977),
                (5, 27.0, 4, 140.0, 86, 2790, 15.6, 1982),
            ],
            "CAR_NAMES": [
                (1, "chevrolet malibu", "chevrolet"),
                (2, "ford pinto", "ford"),
                (3, "mazda rx2 coupe", "mazda"),
                (4, "mazda rx-4", "mazda"),
                (5, "ford mustang gl", "ford"),
            ],
        },
    },
    "battle_death": {
        "ddl": [
            "CREATE TABLE battle (id INTEGER PRIMARY KEY, name TEXT, date TEXT,"
            " bulgarian_commander TEXT, latin_commander TEXT, result TEXT)",
            "CREATE TABLE ship (id INTEGER PRIMARY KEY, lost_in_battle INTEGER, name TEXT,"
            " tonnage TEXT, ship_type TEXT, location TEXT,"
            " FOREIGN KEY (lost_in_battle) REFERENCES battle(id))",
            "CREATE TABLE death (id INTEGER PRIMARY KEY, caused_by_ship_id INTEGER, note TEXT,"
            " killed INTEGER, injured INTEGER,"
            " FOREIGN KEY (caused_by_ship_id) REFERENCES ship(id))",
        ],
        "rows": {
            "battle": [
                (1, "Battle of Adrianople", "1205", "Kaloyan", "Baldwin I", "Bulgarian victory"),
                (2, "Battle of Serres", "1205", "Kaloyan", "unknown", "Bulgarian victory"),
                (3, "Battle of Rusion", "1206", "Kaloyan", "Thierry de Termond", "Bulgarian victory"),
            ],
            "ship": [
                (1, 1, "Leviathan", "1500 tons", "galley", "Aegean"),
                (2, 1, "Dauntless", "900 tons", "cog", "Aegean"),
                (3, 2, "Meteor", "1100 tons", "galley", "Marmara"),
                (4, 3, "Osprey", "800 tons", "cog", "Black Sea"),
            ],
            "death": [
                (1, 1, "storm", 7, 11),
                (2, 2, "fire", 5, 3),
                (3, 3, "collision", 4, 2),
                (4, 4, "boarding", 9, 14),
            ],
        },
    },
    "dog_kennels": {
        "ddl": [
            "CREATE TABLE Owners (owner_id INTEGER PRIMARY KEY, first_name TEXT, last_name TEXT,"
            " street TEXT, city TEXT, state TEXT, zip_code TEXT)",
            "CREATE TABLE Dogs (dog_id INTEGER PRIMARY KEY, owner_id INTEGER, name TEXT,"
            " age INTEGER, FOREIGN KEY (owner_id) REFERENCES Owners(owner_id))",
            "CREATE TABLE Treatments (treatment_id INTEGER PRIMARY KEY, dog_id INTEGER,"
            " date_of_treatment TEXT, cost_of_treatment INTEGER,"
            " FOREIGN KEY (dog_id) REFERENCES Dogs(dog_id))",
        ],
        "rows": {
            "Owners": [
                (1, "Ava", "Kim", "12 Cedar", "Austin", "TX", "73301"),
                (2, "Ben", "Diaz", "9 Lake", "Denver", "CO", "80014"),
                (3, "Cara", "Singh", "4 Hill", "Reno", "NV", "89501"),
            ],
            "Dogs": [(1, 1, "Rex", 3), (2, 1, "Buddy", 5), (3, 2, "Max", 2), (4, 3, "Luna", 4)],
            "Treatments": [
                (1, 1, "2022-01-05", 120),
                (2, 2, "2022-02-11", 95),
                (3, 3, "2022-03-19", 60),
                (4, 4, "2022-04-02", 45),
                (5, 3, "2022-05-30", 70),
            ],
        },
    },
    "voter_1": {
        "ddl": [
            "CREATE TABLE area_code_state (area_code INTEGER PRIMARY KEY, state TEXT)",
            "CREATE TABLE votes (vote_id INTEGER PRIMARY KEY, phone_number TEXT, state TEXT,"
            " created TEXT, FOREIGN KEY (state) REFERENCES area_code_state(state))",
        ],
        "rows": {
            "area_code_state": [(202, "DC"), (512, "TX"), (775, "NV")],
            "votes": [
                (1, "555-1001", "TX", "2016-10-01"),
                (2, "555-1002", "TX", "2016-10-02"),
                (3, "555-1003", "DC", "2016-10-03"),
                (4, "555-1004", "TX", "2016-10-04"),
                (5, "555-1005", "NV", "2016-10-05"),
            ],
        },
    },
    "flight_prices": {
        "ddl": [
            "CREATE TABLE flight (id INTEGER PRIMARY KEY, origin TEXT, destination TEXT,"
            " departure_date TEXT, price INTEGER)",
        ],
        "rows": {
            "flight": [
                (1, "Los Angeles", "Honolulu", "2022-03-01", 120),
                (2, "Los Angeles", "Honolulu", "2022-03-08", 95),
                (3, "Los Angeles", "New York", "2022-03-02", 150),
                (4, "Chicago", "Honolulu", "2022-03-05", 300),
                (5, "Boston", "Seattle", "2022-03-06", 220),
            ],
        },
    },
    "travel_mobility": {
        "ddl": [
            "CREATE TABLE travel (id INTEGER PRIMARY KEY, destination TEXT, airport_code TEXT,"
            " airport_name TEXT)",
            "CREATE TABLE flight (id INTEGER PRIMARY KEY, travel_id INTEGER, month TEXT,"
            " year INTEGER, price INTEGER, FOREIGN KEY (travel_id) REFERENCES travel(id))",
        ],
        "rows": {
            "travel": [
                (1, "Honolulu", "LAX", "Los Angeles International"),
                (2, "Honolulu", "JFK", "John F Kennedy International"),
                (3, "Paris", "JFK", "John F Kennedy International"),
                (4, "Honolulu", "LAX", "Los Angeles International"),
                (5, "Tokyo", "SFO", "San Francisco International"),
                (6, "Paris", "CDG", "Charles de Gaulle"),
                (7, "Honolulu", "SFO", "San Francisco International"),
                (8, "Paris", "LAX", "Los Angeles International"),
                (9, "Paris", "CDG", "Charles de Gaulle"),
            ],
            "flight": [
                (1, 1, "January", 2021, 420),
                (2, 1, "January", 2022, 380),
                (3, 2, "January", 2022, 350),
                (4, 6, "January", 2021, 410),
                (5, 3, "March", 2022, 300),
                (6, 3, "March", 2022, 310),
                (7, 8, "February", 2022, 290),
                (8, 8, "February", 2022, 280),
                (9, 1, "March", 2021, 330),
                (10, 5, "October", 2022, 500),
                (11, 7, "March", 2022, 340),
                (12, 6, "March", 2022, 360),
                (13, 6, "March", 2022, 370),
            ],
        },
    },
}


@dataclass(frozen=True)
class Task:
    task_id: str
    database: str
    question: str
    sql: str
    error_sql: str  # a plausibly wrong generation of the same question


TASKS: tuple[Task, ...] = (
    Task(
        "q01_teacher_hometown",
        "course_teach",
        "Show the name of teachers whose hometown is not Little Lever Urban District.",
        'SELECT name FROM teacher WHERE hometown != "little lever urban district"',
        'SELECT name FROM teacher WHERE hometown = "little lever urban district"',
    ),
    Task(
        "q02_airline_abbreviation",
        "flight_2",
        "What is the abbreviation of JetBlue Airways?",
        'SELECT Abbreviation FROM AIRLINES WHERE Airline = "JetBlue Airways"',
        'SELECT Abbreviation FROM AIRLINES WHERE Airline = "JetBlue"',
    ),
    Task(
        "q03_student_details_desc",
        "student_transcripts_tracking",
        "List the other details of students in reverse alphabetical order.",
        "SELECT other_student_details FROM Students ORDER BY other_student_details DESC",
        "SELECT other_student_details FROM Students ORDER BY other_student_details ASC",
    ),
    Task(
        "q04_airlines_few_flights",
        "flight_2",
        "Which airlines have less than 200 flights?",
        "SELECT T1.Airline FROM AIRLINES AS T1 JOIN FLIGHTS AS T2 ON T1.uid = T2.Airline"
        " GROUP BY T1.Airline HAVING COUNT(*) < 200",
        "SELECT T1.Airline FROM AIRLINES AS T1 JOIN FLIGHTS AS T2 ON T1.uid = T2.Airline"
        " GROUP BY T1.Airline HAVING COUNT(*) > 200",
    ),
    Task(
        "q05_earliest_leaver",
        "student_transcripts_tracking",
        "What is the first, middle, and last name of the earliest school leaver?",
        "SELECT first_name , middle_name , last_name FROM Students ORDER BY date_left ASC LIMIT 1",
        "SELECT first_name , middle_name , last_name FROM Students ORDER BY date_left DESC LIMIT 1",
    ),
    Task(
        "q06_countries_with_makers",
        "car_1",
        "What are the names and ids of all countries with at least one car maker?",
        "SELECT T1.CountryName , T1.CountryId FROM COUNTRIES AS T1 JOIN CAR_MAKERS AS T2"
        " ON T1.CountryId = T2.Country GROUP BY T1.CountryId HAVING COUNT(*) >= 1",
        "SELECT T1.CountryName , T1.CountryId FROM COUNTRIES AS T1 JOIN CAR_MAKERS AS T2"
        " ON T1.CountryId = T2.Country GROUP BY T1.CountryId HAVING COUNT(*) >= 2",
    ),
    Task(
        "q07_deadly_battles",
        "battle_death",
        "What are the ids and names of battles that led to more than 10 deaths from lost ships?",
        "SELECT T1.id , T1.name FROM battle AS T1 JOIN ship AS T2 ON T1.id = T2.lost_in_battle"
        " JOIN death AS T3 ON T2.id = T3.caused_by_ship_id GROUP BY T1.id"
        " HAVING SUM(T3.killed) > 10",
        "SELECT T1.id , T1.name FROM battle AS T1 JOIN ship AS T2 ON T1.id = T2.lost_in_battle"
        " JOIN death AS T3 ON T2.id = T3.caused_by_ship_id GROUP BY T1.id"
        " HAVING SUM(T3.killed) > 100",
    ),
    Task(
        "q08_most_transcripts",
        "student_transcripts_tracking",
        "What is the maximum number of transcript appearances of a student course, and what is"
        " that course enrollment id?",
        "SELECT COUNT(*) , student_course_id FROM Transcript_Contents GROUP BY student_course_id"
        " ORDER BY COUNT(*) DESC LIMIT 1",
        "SELECT COUNT(*) , student_course_id FROM Transcript_Contents GROUP BY student_course_id"
        " ORDER BY COUNT(*) ASC LIMIT 1",
    ),
    Task(
        "q09_haiti_or_phone",
        "student_transcripts_tracking",
        "What are the first names of students living in Haiti permanently or with the cell phone"
        " number 09700166582?",
        "SELECT T1.first_name FROM students AS T1 JOIN addresses AS T2"
        " ON T1.permanent_address_id = T2.address_id"
        " WHERE T2.country = 'haiti' OR T1.cell_mobile_number = '09700166582'",
        "SELECT T1.first_name FROM students AS T1 JOIN addresses AS T2"
        " ON T1.permanent_address_id = T2.address_id"
        " WHERE T2.country = 'haiti' AND T1.cell_mobile_number = '09700166582'",
    ),
    Task(
        "q10_top_spending_owner",
        "dog_kennels",
        "Which owner spent the most on treatments for their dogs? Show the owner id and zip code.",
        "SELECT T1.owner_id , T1.zip_code FROM Owners AS T1 JOIN Dogs AS T2"
        " ON T1.owner_id = T2.owner_id JOIN Treatments AS T3 ON T2.dog_id = T3.dog_id"
        " GROUP BY T1.owner_id ORDER BY sum(T3.cost_of_treatment) DESC LIMIT 1",
        "SELECT T1.owner_id , T1.zip_code FROM Owners AS T1 JOIN Dogs AS T2"
        " ON T1.owner_id = T2.owner_id JOIN Treatments AS T3 ON T2.dog_id = T3.dog_id"
        " GROUP BY T1.owner_id ORDER BY count(*) DESC LIMIT 1",
    ),
    Task(
        "q11_busiest_area_code",
        "voter_1",
        "What is the area code in which the most voters voted?",
        "SELECT T1.area_code FROM area_code_state AS T1 JOIN votes AS T2 ON T1.state = T2.state"
        " GROUP BY T1.area_code ORDER BY COUNT(*) DESC LIMIT 1",
        "SELECT T1.area_code FROM area_code_state AS T1 JOIN votes AS T2 ON T1.state = T2.state"
        " GROUP BY T1.area_code ORDER BY COUNT(*) ASC LIMIT 1",
    ),
    Task(
        "q12_three_cylinder_power",
        "car_1",
        "Among cars with three cylinders, which has the most horsepower? Show the horsepower"
        " and make.",
        "SELECT T2.horsepower , T1.Make FROM CAR_NAMES AS T1 JOIN CARS_DATA AS T2"
        " ON T1.MakeId = T2.Id WHERE T2.cylinders = 3 ORDER BY T2.horsepower DESC LIMIT 1",
        "SELECT T2.horsepower , T1.Make FROM CAR_NAMES AS T1 JOIN CARS_DATA AS T2"
        " ON T1.MakeId = T2.Id WHERE T2.cylinders = 4 ORDER BY T2.horsepower DESC LIMIT 1",
    ),
)

# The walk-through scenario: a seemingly right but subtly wrong generation
# that the user repairs by editing two explanation steps.
SCENARIO_QUESTION = (
    "Which airport has the most flights to the most popular destination in the first quarter"
    " of 2022?"
)
SCENARIO_DATABASE = "travel_mobility"
SCENARIO_SQL = (
    "SELECT travel.airport_name FROM travel WHERE travel.destination ="
    ' (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id'
    ' WHERE flight.month = "January" GROUP BY travel.destination'
    " ORDER BY COUNT (*) DESC LIMIT 1)"
    " GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1"
)
SCENARIO_REPAIRED_SQL = (
    "SELECT travel.airport_name FROM travel WHERE travel.destination ="
    ' (SELECT travel.destination FROM flight JOIN travel ON flight.travel_id = travel.id'
    ' WHERE flight.month BETWEEN "January" AND "March" AND flight.year = 2022'
    " GROUP BY travel.destination ORDER BY COUNT (*) DESC LIMIT 1)"
    " GROUP BY travel.airport_code ORDER BY COUNT (*) DESC LIMIT 1"
)

CHEAPEST_FLIGHT_QUESTION = "What is the cheapest flight from Los Angeles to Honolulu?"
CHEAPEST_FLIGHT_DATABASE = "flight_prices"
CHEAPEST_FLIGHT_SQL = (
    'SELECT MIN (flight.price) FROM flight WHERE flight.origin = "Los Angeles"'
    ' AND flight.destination = "Honolulu"'
)


def question_map() -> dict[str, tuple[str, str]]:
    """question -> (database, SQL) for the well-behaved canned generator."""
    mapping = {task.question: (task.database, task.sql) for task in TASKS}
    mapping[SCENARIO_QUESTION] = (SCENARIO_DATABASE, SCENARIO_SQL)
    mapping[CHEAPEST_FLIGHT_QUESTION] = (CHEAPEST_FLIGHT_DATABASE, CHEAPEST_FLIGHT_SQL)
    return mapping


def error_question_map() -> dict[str, tuple[str, str]]:
    """question -> (database, SQL) for the intentionally wrong canned generator."""
    mapping = {task.question: (task.database, task.error_sql) for task in TASKS}
    mapping[SCENARIO_QUESTION] = (SCENARIO_DATABASE, SCENARIO_SQL)
    mapping[CHEAPEST_FLIGHT_QUESTION] = (
        CHEAPEST_FLIGHT_DATABASE,
        CHEAPEST_FLIGHT_SQL.replace("MIN", "MAX"),
    )
    return mapping


def build_database(name: str, path: Path | str) -> Path:
    """Create one demo database file at ``path``."""
    spec = DATABASES[name]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.exists():
        path.unlink()
    conn = sqlite3.connect(path)
    try:
        for ddl in spec["ddl"]:
            conn.execute(ddl)
        for table, rows in spec["rows"].items():
            if not rows:
                continue
            placeholders = ",".join("?" * len(rows[0]))
            conn.executemany(f"INSERT INTO {table} VALUES ({placeholders})", rows)
        conn.commit()
    finally:
        conn.close()
    return path


def _execute_reference(db_path: Path, sql: str) -> dict:
    """Run ``sql`` with plain sqlite3; this is the ground-truth answer."""
    conn = sqlite3.connect(db_path)
    try:
        cursor = conn.execute(sql)
        columns = [d[0] for d in cursor.description]
        rows = [list(row) for row in cursor.fetchall()]
    finally:
        conn.close()
    return {"columns": columns, "rows": rows, "ordered": "order by" in sql.lower()}


def build_corpus(dest: Path | str) -> Path:
    """Materialize all databases and task directories under ``dest``.

    Layout: ``dest/fixtures/<db>.sqlite`` and ``dest/tasks/<task_id>/`` with
    ``query.sql``, ``db`` (a relative path to the database file),
    ``question.txt``, and ``expected.json``.
    """
    dest = Path(dest)
    fixtures_dir = dest / "fixtures"
    tasks_dir = dest / "tasks"
    db_paths = {name: build_database(name, fixtures_dir / f"{name}.sqlite") for name in DATABASES}

    for task in TASKS:
        task_dir = tasks_dir / task.task_id
        task_dir.mkdir(parents=True, exist_ok=True)
        (task_dir / "query.sql").write_text(task.sql + "\n", encoding="utf-8")
        (task_dir / "question.txt").write_text(task.question + "\n", encoding="utf-8")
        relative = Path("..") / ".." / "fixtures" / f"{task.database}.sqlite"
        (task_dir / "db").write_text(str(relative) + "\n", encoding="utf-8")
        expected = _execute_reference(db_paths[task.database], task.sql)
        (task_dir / "expected.json").write_text(
            json.dumps(expected, indent=2) + "\n", encoding="utf-8"
        )
    return dest
