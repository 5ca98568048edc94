# Generated by Django 5.2.7 on 2025-10-14 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='CompiledCircuit',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(help_text='Label given when the circuit was saved', max_length=200)),
                ('kind', models.CharField(choices=[('control', 'Controlled-U'), ('fanout', 'Fanout'), ('reorder', 'Reorder'), ('interact', 'Interaction round'), ('ccac', 'Compiled CCAC circuit'), ('other', 'Other')], db_index=True, default='other', max_length=20)),
                ('model', models.CharField(choices=[('NANTC', 'NANTC'), ('CCAC', 'CCAC'), ('CCNTC', 'CCNTC')], db_index=True, max_length=10)),
                ('dim', models.PositiveSmallIntegerField(help_text='Grid dimension')),
                ('side', models.PositiveIntegerField(blank=True, help_text='Grid side (m for control/fanout, n for routing)', null=True)),
                ('depth', models.PositiveIntegerField(help_text='Physical timesteps after expansion')),
                ('size', models.PositiveIntegerField(help_text='Physical operations after expansion')),
                ('width', models.PositiveIntegerField()),
                ('document', models.JSONField(help_text='Complete circuit document')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'verbose_name': 'Compiled Circuit',
                'verbose_name_plural': 'Compiled Circuits',
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['-created_at'], name='circuit_created_idx'), models.Index(fields=['kind', '-created_at'], name='circuit_kind_created_idx')],
            },
        ),
    ]
