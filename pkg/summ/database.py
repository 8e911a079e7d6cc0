import os
import sqlite3

from .errors import ConfigurationError


class ResultsDatabase:

    TRACE_TABLE = 'search_trace'
    RECOVERY_TABLE = 'recovery_runs'

    CREATE_TABLE = 'CREATE TABLE %s%s'

    TRACE_TABLE_DEF = '(target TEXT, step INT, sweep TEXT, candidate TEXT, ' \
                      'influencers TEXT, score REAL, accepted INT)'
    TRACE_INSERT = 'INSERT INTO %s VALUES (?,?,?,?,?,?,?)' % (TRACE_TABLE,)

    RECOVERY_TABLE_DEF = '(k INT, run INT, influencers TEXT, f1 REAL, score REAL)'
    RECOVERY_INSERT = 'INSERT INTO %s VALUES (?,?,?,?,?)' % (RECOVERY_TABLE,)

    def __init__(self, filename, overwrite=False):
        self.filename = filename
        if os.path.exists(self.filename):
            if overwrite:
                os.remove(filename)
            else:
                raise ConfigurationError('Database file %s already exists, '
                                         'try again with a different filename' % filename)

        self.connection = sqlite3.connect(self.filename)
        self.cursor = self.connection.cursor()

        self._initdb()

    def __del__(self):
        '''Close the database connection when this object goes out of scope'''
        self.close()

    def close(self):
        try:
            self.connection.close()
        except AttributeError:
            pass

    def _initdb(self):
        '''Create the trace and recovery tables'''
        self.cursor.execute(self.CREATE_TABLE % (self.TRACE_TABLE, self.TRACE_TABLE_DEF))
        self.cursor.execute(self.CREATE_TABLE % (self.RECOVERY_TABLE, self.RECOVERY_TABLE_DEF))
        self.connection.commit()

    def commitTrace(self, target, records):
        '''Store the TraceRecords of one search, numbered in the order scored'''
        tups = []
        for step, rec in enumerate(records):
            tups.append((
                ','.join(target),
                step,
                rec.sweep,
                rec.candidate,
                ','.join(rec.influencers),
                rec.score,
                int(rec.accepted)
            ))
        self.cursor.executemany(self.TRACE_INSERT, tups)
        self.connection.commit()

    def commitRecovery(self, runs):
        '''Store per-run records of a recovery experiment'''
        tups = []
        for run in runs:
            tups.append((
                run['k'],
                run['run'],
                ','.join(run['influencers']),
                run['f1'],
                run['score']
            ))
        self.cursor.executemany(self.RECOVERY_INSERT, tups)
        self.connection.commit()

    def traceRows(self, target=None):
        query = 'SELECT * FROM %s' % self.TRACE_TABLE
        if target is None:
            return self.cursor.execute(query + ' ORDER BY target, step').fetchall()
        return self.cursor.execute(query + ' WHERE target = ? ORDER BY step',
                                   (','.join(target),)).fetchall()

    def recoveryRows(self):
        return self.cursor.execute('SELECT * FROM %s ORDER BY k, run' %
                                   self.RECOVERY_TABLE).fetchall()
