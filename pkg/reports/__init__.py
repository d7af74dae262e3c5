from .check_reporter import CheckReporter, CheckResult, check_reporter, save_tables_to_excel
